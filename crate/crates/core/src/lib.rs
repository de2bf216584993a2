//! Linear codes over GF(q) under the symplectic inner product, and the
//! puncture/shorten construction that turns a stabilizer quantum code
//! `[[n, k, d; 0]]_q` into stabilizer entanglement-assisted codes
//! `[[n - l, k, >= d; l]]_q` for every `1 <= l <= d - 1`.
//!
//! Modules, bottom-up:
//!
//! - [`field`]: GF(p^m) arithmetic on integer element codes.
//! - [`matrix`]: dense GF(q) matrices; RREF, nullspace, row-space sum and
//!   intersection.
//! - [`symplectic_code`]: codes in F_q^{2n}, symplectic duals, weights and
//!   `[[n, k, d; c]]` parameters.
//! - [`transform`]: puncturing, shortening, the construction itself and the
//!   lemma checks behind it.
//! - [`cli`]: the code-file format and the `eaqecc` command line.

pub mod cli;
pub mod field;
pub mod matrix;
pub mod symplectic_code;
pub mod transform;

pub use field::{FieldElement, FieldError, FieldSpec};
pub use matrix::{GfMatrix, MatrixError};
pub use symplectic_code::{
    random_code, random_self_orthogonal, CodeError, CodeParams, LinearCode, SymplecticVector,
    DEFAULT_CAP,
};
pub use transform::{
    compare_applicability, construct_eaqecc, puncture, search_positions, shorten, verify_lemmas,
    Applicability, Check, CheckStatus, ConstructOptions, PositionSet, SearchHit, TheoremReport,
    TransformError,
};
