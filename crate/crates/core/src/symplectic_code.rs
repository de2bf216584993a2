//! Linear codes in F_q^{2n} under the symplectic form
//! `<(a|b), (c|d)>_s = <a, d> - <b, c>`.
//!
//! A [`LinearCode`] is a subspace stored as its canonical (RREF) basis, so
//! structural equality is subspace equality. Coordinates are 0-based here;
//! coordinate `i < n` pairs with `n + i`.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::matrix::{Echelon, GfMatrix, MatrixError};

/// Default ceiling on the number of codewords a weight search may visit.
pub const DEFAULT_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("expected vectors of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("codes live in different ambient spaces")]
    Ambient,
    #[error("excluded code is not a subcode")]
    NotSubcode,
    #[error("enumeration of {size} codewords exceeds the cap of {cap}; raise --cap to proceed")]
    CapExceeded { size: u128, cap: u64 },
    #[error("requested dimension {dim} exceeds n = {n} for a self-orthogonal code")]
    TargetDim { dim: usize, n: usize },
}

/// A vector `(a|b)` of F_q^{2n}.
#[derive(Clone, PartialEq, Eq)]
pub struct SymplecticVector {
    field: FieldSpec,
    a: Vec<u8>,
    b: Vec<u8>,
}

impl fmt::Debug for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}|{:?})", self.a, self.b)
    }
}

impl SymplecticVector {
    pub fn new(field: FieldSpec, a: &[u32], b: &[u32]) -> Result<Self, CodeError> {
        if a.len() != b.len() {
            return Err(CodeError::Length {
                expected: a.len(),
                got: b.len(),
            });
        }
        let check = |v: &[u32]| -> Result<Vec<u8>, CodeError> {
            v.iter()
                .map(|&c| field.element(c).map(|e| e.code()).map_err(CodeError::from))
                .collect()
        };
        Ok(Self {
            a: check(a)?,
            b: check(b)?,
            field,
        })
    }

    /// Splits a length-2n vector of raw codes into its halves.
    pub fn from_concat(field: FieldSpec, v: &[u8]) -> Result<Self, CodeError> {
        if !v.len().is_multiple_of(2) {
            return Err(CodeError::Length {
                expected: v.len() + 1,
                got: v.len(),
            });
        }
        let n = v.len() / 2;
        if let Some(&c) = v.iter().find(|&&c| !field.contains(c as u32)) {
            return Err(FieldError::OutOfRange {
                code: c as u32,
                q: field.q(),
            }
            .into());
        }
        Ok(Self {
            field,
            a: v[..n].to_vec(),
            b: v[n..].to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u8] {
        &self.a
    }

    pub fn b(&self) -> &[u8] {
        &self.b
    }

    pub fn to_concat(&self) -> Vec<u8> {
        let mut v = self.a.clone();
        v.extend_from_slice(&self.b);
        v
    }

    pub fn symplectic_product(&self, other: &Self) -> Result<FieldElement, CodeError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch {
                left: self.field.q(),
                right: other.field.q(),
            }
            .into());
        }
        if self.n() != other.n() {
            return Err(CodeError::Length {
                expected: self.n(),
                got: other.n(),
            });
        }
        let v = symplectic_product_raw(&self.field, &self.to_concat(), &other.to_concat());
        Ok(self.field.element(v as u32)?)
    }

    pub fn symplectic_weight(&self) -> usize {
        self.a
            .iter()
            .zip(&self.b)
            .filter(|(x, y)| **x != 0 || **y != 0)
            .count()
    }
}

/// `<(a|b), (c|d)>_s` over concatenated raw codes of equal even length.
pub fn symplectic_product_raw(field: &FieldSpec, x: &[u8], y: &[u8]) -> u8 {
    let n = x.len() / 2;
    let mut acc = 0u8;
    for i in 0..n {
        acc = field.add(acc, field.mul(x[i], y[n + i]));
        acc = field.sub(acc, field.mul(x[n + i], y[i]));
    }
    acc
}

pub fn symplectic_weight_raw(x: &[u8]) -> usize {
    let n = x.len() / 2;
    (0..n).filter(|&i| x[i] != 0 || x[n + i] != 0).count()
}

pub fn hamming_weight_raw(x: &[u8]) -> usize {
    x.iter().filter(|&&c| c != 0).count()
}

/// A subspace of F_q^{2n}, held as its canonical basis.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    basis: GfMatrix,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode(n={}, dim={}, {}) {{",
            self.n,
            self.dim(),
            self.field()
        )?;
        for r in self.basis.row_iter() {
            write!(f, " {}", format_row(r, self.n))?;
        }
        write!(f, " }}")
    }
}

/// `1 0 0 1 0 | 0 1 1 0 0`
pub fn format_row(r: &[u8], n: usize) -> String {
    let half = |s: &[u8]| {
        s.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    match n {
        0 => "|".to_string(),
        _ => format!("{} | {}", half(&r[..n]), half(&r[n..])),
    }
}

impl LinearCode {
    /// Span of `basis`'s rows; `basis` must have `2n` columns.
    pub fn from_matrix(n: usize, basis: &GfMatrix) -> Result<Self, CodeError> {
        if basis.cols() != 2 * n {
            return Err(CodeError::Length {
                expected: 2 * n,
                got: basis.cols(),
            });
        }
        Ok(Self {
            n,
            basis: basis.canonical(),
        })
    }

    /// Span of rows of raw codes, each of length `2n`.
    pub fn from_rows<R: AsRef<[u32]>>(
        field: FieldSpec,
        n: usize,
        rows: &[R],
    ) -> Result<Self, CodeError> {
        if let Some(r) = rows.iter().find(|r| r.as_ref().len() != 2 * n) {
            return Err(CodeError::Length {
                expected: 2 * n,
                got: r.as_ref().len(),
            });
        }
        Self::from_matrix(n, &GfMatrix::from_rows(field, 2 * n, rows)?)
    }

    pub fn from_vectors(
        field: FieldSpec,
        n: usize,
        vectors: &[SymplecticVector],
    ) -> Result<Self, CodeError> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.n() != n {
                return Err(CodeError::Length {
                    expected: n,
                    got: v.n(),
                });
            }
            if v.field != field {
                return Err(CodeError::Ambient);
            }
            rows.push(v.to_concat());
        }
        Ok(Self {
            n,
            basis: GfMatrix::from_code_rows(field, 2 * n, rows).canonical(),
        })
    }

    pub(crate) fn from_canonical(n: usize, basis: GfMatrix) -> Self {
        debug_assert_eq!(basis.cols(), 2 * n);
        Self { n, basis }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Self::from_canonical(n, GfMatrix::empty(field, 2 * n))
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Self::from_canonical(n, GfMatrix::identity(field, 2 * n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    /// Canonical RREF basis, `2n` columns.
    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<SymplecticVector> {
        self.basis
            .row_iter()
            .map(|r| SymplecticVector::from_concat(self.field().clone(), r).unwrap())
            .collect()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        v.len() == 2 * self.n && self.basis.contains_row(v)
    }

    fn ambient_check(&self, other: &Self) -> Result<(), CodeError> {
        if self.n != other.n || self.field() != other.field() {
            return Err(CodeError::Ambient);
        }
        Ok(())
    }

    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self.field() == other.field()
            && self.basis.row_iter().all(|r| other.basis.contains_row(r))
    }

    /// Symplectic dual: nullspace of the rows `(b | -a)` of the basis.
    pub fn dual(&self) -> Self {
        let f = self.field();
        let n = self.n;
        let mut data = Vec::with_capacity(self.dim() * 2 * n);
        for r in self.basis.row_iter() {
            data.extend_from_slice(&r[n..]);
            data.extend(r[..n].iter().map(|&x| f.neg(x)));
        }
        let m = GfMatrix::from_raw(f.clone(), self.dim(), 2 * n, data);
        Self::from_canonical(n, m.nullspace())
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let f = self.field();
        let rows: Vec<&[u8]> = self.basis.row_iter().collect();
        rows.iter().enumerate().all(|(i, x)| {
            rows[i + 1..]
                .iter()
                .all(|y| symplectic_product_raw(f, x, y) == 0)
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, CodeError> {
        self.ambient_check(other)?;
        Ok(Self::from_canonical(
            self.n,
            self.basis.row_space_intersect(&other.basis)?,
        ))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, CodeError> {
        self.ambient_check(other)?;
        Ok(Self::from_canonical(
            self.n,
            self.basis.row_space_sum(&other.basis)?,
        ))
    }

    /// Minimum symplectic weight over `self \ exclude` (default `exclude =
    /// {0}`), by visiting all `q^dim` codewords. `None` when that set is
    /// empty.
    pub fn min_symplectic_weight(
        &self,
        exclude: Option<&LinearCode>,
        cap: u64,
    ) -> Result<Option<usize>, CodeError> {
        self.min_weight_by(exclude, cap, symplectic_weight_raw)
    }

    /// Minimum Hamming weight over the nonzero codewords, reading the code
    /// as an ordinary length-2n linear code.
    pub fn min_hamming_weight(&self, cap: u64) -> Result<Option<usize>, CodeError> {
        self.min_weight_by(None, cap, hamming_weight_raw)
    }

    fn min_weight_by<W>(
        &self,
        exclude: Option<&LinearCode>,
        cap: u64,
        weight: W,
    ) -> Result<Option<usize>, CodeError>
    where
        W: Fn(&[u8]) -> usize + Sync,
    {
        let size = (self.field().q() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(CodeError::CapExceeded { size, cap });
        }
        // Rows outside `exclude` come first; a codeword counts only when at
        // least one of their coefficients is nonzero.
        let (rows, required) = match exclude {
            None => (self.basis.to_rows(), self.dim()),
            Some(e) => {
                if !e.is_subcode_of(self) {
                    return Err(CodeError::NotSubcode);
                }
                let mut span = Echelon::new(self.field().clone(), 2 * self.n);
                for r in e.basis.row_iter() {
                    span.insert(r);
                }
                let mut rows: Vec<Vec<u8>> = self
                    .basis
                    .row_iter()
                    .filter(|r| span.insert(r))
                    .map(<[u8]>::to_vec)
                    .collect();
                let required = rows.len();
                rows.extend(e.basis.to_rows());
                (rows, required)
            }
        };
        Ok(min_weight_enumerate(
            self.field(),
            &rows,
            required,
            2 * self.n,
            &weight,
        ))
    }
}

/// Mixed-radix walk over all coefficient vectors of `rows`, keeping level
/// partial sums so each step touches only the rows whose digit changed.
/// Codewords whose first `required` coefficients are all zero are skipped.
fn min_weight_enumerate<W>(
    field: &FieldSpec,
    rows: &[Vec<u8>],
    required: usize,
    len: usize,
    weight: &W,
) -> Option<usize>
where
    W: Fn(&[u8]) -> usize + Sync,
{
    let q = field.q();
    let dim = rows.len();
    if required == 0 {
        return None;
    }
    // scaled[r][c] = c · rows[r]
    let scaled: Vec<Vec<Vec<u8>>> = rows
        .iter()
        .map(|row| {
            (0..q)
                .map(|c| row.iter().map(|&x| field.mul(c as u8, x)).collect())
                .collect()
        })
        .collect();

    // Leading `t` digits are fixed per parallel chunk.
    let mut t = 0;
    let mut chunks = 1usize;
    while t < dim && chunks < 256 {
        chunks *= q;
        t += 1;
    }

    let add_into = |dst: &mut [u8], src: &[u8], v: &[u8]| {
        for ((d, &s), &x) in dst.iter_mut().zip(src).zip(v) {
            *d = field.add(s, x);
        }
    };

    // Weight 1 is the floor for nonzero words; once seen, other chunks stop.
    let floor_hit = AtomicBool::new(false);

    (0..chunks)
        .into_par_iter()
        .filter_map(|chunk| {
            if floor_hit.load(Ordering::Relaxed) {
                return Some(1);
            }
            let mut base = vec![0u8; len];
            let mut prefix_required_nonzero = false;
            let mut rest = chunk;
            for (r, scaled_r) in scaled.iter().enumerate().take(t) {
                let c = rest % q;
                rest /= q;
                if c != 0 {
                    if r < required {
                        prefix_required_nonzero = true;
                    }
                    let prev = base.clone();
                    add_into(&mut base, &prev, &scaled_r[c]);
                }
            }
            let s = dim - t;
            let suffix = &scaled[t..];
            // partial[j] = base + sum_{i<j} digit_i · suffix_row_i
            let mut partial = vec![base; s + 1];
            let mut digits = vec![0usize; s];
            let mut req_nonzero_digits = 0usize;
            let mut best: Option<usize> = None;
            loop {
                if prefix_required_nonzero || req_nonzero_digits > 0 {
                    let w = weight(&partial[s]);
                    if best.is_none_or(|b| w < b) {
                        best = Some(w);
                        if w <= 1 {
                            floor_hit.store(true, Ordering::Relaxed);
                            return best;
                        }
                    }
                }
                // increment the last digit, carrying leftwards
                let mut j = s;
                loop {
                    if j == 0 {
                        return best;
                    }
                    j -= 1;
                    let was_zero = digits[j] == 0;
                    digits[j] = (digits[j] + 1) % q;
                    if t + j < required {
                        if was_zero {
                            req_nonzero_digits += 1;
                        } else if digits[j] == 0 {
                            req_nonzero_digits -= 1;
                        }
                    }
                    if digits[j] != 0 {
                        break;
                    }
                }
                for k in j..s {
                    let (lo, hi) = partial.split_at_mut(k + 1);
                    add_into(&mut hi[0], &lo[k], &suffix[k][digits[k]]);
                }
            }
        })
        .min()
}

/// Parameters `[[n, k, d; c]]_q` of a code used as a stabilizer EAQECC.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    /// Minimum weight over `dual \ C` (or `dual \ {0}` when `c = 0`);
    /// `None` when that set is empty.
    pub d: Option<usize>,
    pub c: usize,
    /// Minimum weight over `dual \ {0}`.
    pub pure_d: Option<usize>,
    pub is_stabilizer_qecc: bool,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.map_or("-".to_string(), |d| d.to_string());
        write!(f, "[[{},{},{};{}]]_{}", self.n, self.k, d, self.c, self.q)
    }
}

impl LinearCode {
    pub fn params(&self, cap: u64) -> Result<CodeParams, CodeError> {
        self.params_with_pure_distance(cap, None)
    }

    /// As [`LinearCode::params`], but trusts `pure_d` instead of
    /// enumerating the dual for it.
    pub fn params_with_pure_distance(
        &self,
        cap: u64,
        pure_d: Option<Option<usize>>,
    ) -> Result<CodeParams, CodeError> {
        let dual = self.dual();
        let radical = self.intersect(&dual)?;
        let diff = self.dim() - radical.dim();
        debug_assert!(diff.is_multiple_of(2), "alternating form has even rank");
        let c = diff / 2;
        let k = c + self.n - self.dim();
        let pure_d = match pure_d {
            Some(d) => d,
            None => dual.min_symplectic_weight(None, cap)?,
        };
        let d = if c == 0 {
            pure_d
        } else {
            dual.min_symplectic_weight(Some(&radical), cap)?
        };
        Ok(CodeParams {
            q: self.field().q(),
            n: self.n,
            k,
            d,
            c,
            pure_d,
            is_stabilizer_qecc: c == 0 && self.is_self_orthogonal(),
        })
    }
}

fn random_vector_in(code: &LinearCode, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let f = code.field();
    let mut v = vec![0u8; 2 * code.n];
    for r in code.basis.row_iter() {
        let c = rng.gen_range(0..f.q()) as u8;
        if c == 0 {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(r) {
            *x = f.add(*x, f.mul(c, y));
        }
    }
    v
}

/// Seeded random self-orthogonal code of dimension `target_dim`.
///
/// Grows an isotropic span one vector at a time: each new vector is drawn
/// uniformly from the symplectic dual of the current span (via random
/// coefficients on its canonical basis) and rejected while it lies in the
/// span. The generator is ChaCha8 seeded with `seed`, so output is stable
/// across platforms.
pub fn random_self_orthogonal(
    field: &FieldSpec,
    n: usize,
    target_dim: usize,
    seed: u64,
) -> Result<LinearCode, CodeError> {
    if target_dim > n {
        return Err(CodeError::TargetDim { dim: target_dim, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span = Echelon::new(field.clone(), 2 * n);
    while span.dim() < target_dim {
        let current = LinearCode::from_canonical(n, span.to_matrix());
        let dual = current.dual();
        loop {
            let v = random_vector_in(&dual, &mut rng);
            if span.insert(&v) {
                break;
            }
        }
    }
    Ok(LinearCode::from_canonical(n, span.to_matrix()))
}

/// Seeded random code of dimension `dim` with no orthogonality constraint.
pub fn random_code(field: &FieldSpec, n: usize, dim: usize, seed: u64) -> LinearCode {
    assert!(dim <= 2 * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = LinearCode::full(field.clone(), n);
    let mut span = Echelon::new(field.clone(), 2 * n);
    while span.dim() < dim {
        let v = random_vector_in(&full, &mut rng);
        span.insert(&v);
    }
    LinearCode::from_canonical(n, span.to_matrix())
}
