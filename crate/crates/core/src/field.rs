//! Exact arithmetic in GF(p^m) for small prime powers.
//!
//! Elements are integer codes in `0..q`: the base-p little-endian encoding of
//! the polynomial coefficients, so `c0 + c1 x + ... + c_{m-1} x^{m-1}` is
//! stored as `c0 + c1 p + ... + c_{m-1} p^{m-1}`. Code 0 is the additive
//! identity and code 1 the multiplicative identity.
//!
//! All operations go through precomputed `q × q` tables, which is affordable
//! under the `q <= 256` cap and keeps the weight enumerators in the code
//! modules branch-free.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("irreducible polynomial must have {expected} coefficients, got {got}")]
    PolyLength { expected: usize, got: usize },
    #[error("polynomial coefficient {coeff} is not in 0..{p}")]
    PolyCoefficient { coeff: u32, p: u32 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible over GF({p})")]
    Reducible { p: u32 },
    #[error("GF({0}) has no built-in irreducible polynomial; supply one")]
    MissingPolynomial(u64),
    #[error("element code {code} is out of range for GF({q})")]
    OutOfRange { code: u32, q: usize },
    #[error("elements belong to different fields: GF({left}) vs GF({right})")]
    Mismatch { left: usize, right: usize },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
}

struct Tables {
    p: u32,
    m: u32,
    q: usize,
    poly: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Description of GF(p^m) together with its arithmetic tables.
///
/// Cheap to clone; equality compares `(p, m, irreducible)`.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.poly == other.inner.poly)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("irreducible", &self.inner.poly)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Built-in irreducible polynomials (coefficients low degree first).
pub fn default_polynomial(q: u64) -> Option<Vec<u32>> {
    match q {
        4 => Some(vec![1, 1, 1]),
        8 => Some(vec![1, 1, 0, 1]),
        9 => Some(vec![1, 0, 1]),
        _ => None,
    }
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_mod_prime(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (r[r.len() - 1] * lead_inv) % p;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * bc % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&x| (a * x) % p == 1)
        .expect("nonzero element of GF(p)")
}

/// True when the monic `poly` (degree m) has no monic divisor of degree
/// `1..=m/2`, checked exhaustively.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(deg + 1);
            let mut rest = idx;
            for _ in 0..deg {
                divisor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn decode(code: usize, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    let mut rest = code as u32;
    for _ in 0..m {
        out.push(rest % p);
        rest /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> usize {
    coeffs
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

impl FieldSpec {
    /// GF(p^m). For `m = 1` the polynomial is ignored; for `m > 1` a missing
    /// polynomial falls back to the built-in defaults for q = 4, 8, 9.
    pub fn new(p: u32, m: u32, irreducible: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let poly = if m == 1 {
            vec![0, 1]
        } else {
            let poly = match irreducible {
                Some(c) => c.to_vec(),
                None => default_polynomial(q).ok_or(FieldError::MissingPolynomial(q))?,
            };
            Self::validate_poly(&poly, p, m)?;
            poly
        };
        Ok(Self::build(p, m, poly))
    }

    /// GF(q) from its order, using the built-in polynomial when `q` is an
    /// extension field and none is given.
    pub fn from_order(q: u64, irreducible: Option<&[u32]>) -> Result<Self, FieldError> {
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, m, irreducible)
    }

    /// Prime field GF(p); panics if `p` is not a supported prime.
    pub fn prime(p: u32) -> Self {
        Self::new(p, 1, None).expect("supported prime")
    }

    fn validate_poly(poly: &[u32], p: u32, m: u32) -> Result<(), FieldError> {
        if poly.len() != m as usize + 1 {
            return Err(FieldError::PolyLength {
                expected: m as usize + 1,
                got: poly.len(),
            });
        }
        if let Some(&coeff) = poly.iter().find(|&&c| c >= p) {
            return Err(FieldError::PolyCoefficient { coeff, p });
        }
        if poly[m as usize] != 1 {
            return Err(FieldError::NotMonic);
        }
        if !is_irreducible(poly, p) {
            return Err(FieldError::Reducible { p });
        }
        Ok(())
    }

    fn build(p: u32, m: u32, poly: Vec<u32>) -> Self {
        let q = (p as usize).pow(m);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let ca = decode(a, p, m);
            for b in 0..q {
                let cb = decode(b, p, m);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum, p) as u8;

                let mut prod = vec![0u32; 2 * m as usize];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut reduced = if m == 1 {
                    prod.truncate(1);
                    prod
                } else {
                    poly_rem(&prod, &poly, p)
                };
                reduced.resize(m as usize, 0);
                mul[a * q + b] = encode(&reduced, p) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
            }
        }
        Self {
            inner: Arc::new(Tables {
                p,
                m,
                q,
                poly,
                add,
                mul,
                neg,
                inv,
            }),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> usize {
        self.inner.q
    }

    /// Irreducible polynomial coefficients, lowest degree first. For prime
    /// fields this is `[0, 1]` (the polynomial `x`).
    pub fn irreducible(&self) -> &[u32] {
        &self.inner.poly
    }

    /// Wraps an integer code as an element of this field.
    pub fn element(&self, code: u32) -> Result<FieldElement, FieldError> {
        if code as usize >= self.q() {
            return Err(FieldError::OutOfRange { code, q: self.q() });
        }
        Ok(FieldElement {
            spec: self.clone(),
            code: code as u8,
        })
    }

    /// All elements in code order `0..q`.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.q() as u32)
            .map(|c| FieldElement {
                spec: self.clone(),
                code: c as u8,
            })
            .collect()
    }

    // Raw code arithmetic used by the linear-algebra hot paths. Callers
    // guarantee the codes are `< q`.

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.inner.add[a as usize * self.inner.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.inner.mul[a as usize * self.inner.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.inner.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inner.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn contains(&self, code: u32) -> bool {
        (code as usize) < self.q()
    }
}

/// An element of a specific field; arithmetic checks that both operands
/// share the same [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    code: u8,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.code, self.spec)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl FieldElement {
    pub fn code(&self) -> u8 {
        self.code
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::Mismatch {
                left: self.spec.q(),
                right: other.spec.q(),
            });
        }
        Ok(())
    }

    fn with(&self, code: u8) -> Self {
        Self {
            spec: self.spec.clone(),
            code,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.with(self.spec.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.with(self.spec.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.with(self.spec.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.spec.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.spec
            .inv(self.code)
            .map(|c| self.with(c))
            .ok_or(FieldError::InverseOfZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.spec.pow(self.code, e))
    }
}
