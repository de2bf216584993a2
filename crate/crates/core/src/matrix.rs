//! Dense matrices over GF(q) and the row-space algebra built on them.
//!
//! Subspaces are always handed around as their canonical basis: the reduced
//! row-echelon form with zero rows dropped. Two subspaces are equal exactly
//! when their canonical matrices are equal entrywise. A 0-row matrix still
//! carries its column count.

use std::fmt;

use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("entry {code} at ({row}, {col}) is not an element of GF({q})")]
    Entry {
        row: usize,
        col: usize,
        code: u32,
        q: usize,
    },
    #[error("column count mismatch: {left} vs {right}")]
    Columns { left: usize, right: usize },
    #[error("matrices are over different fields")]
    Field,
}

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GfMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for r in self.row_iter() {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

impl GfMatrix {
    /// Row-major constructor; validates shape and every entry.
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|&c| !field.contains(c)) {
            return Err(MatrixError::Entry {
                row: pos / cols,
                col: pos % cols,
                code: data[pos],
                q: field.q(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            data: data.into_iter().map(|c| c as u8).collect(),
        })
    }

    /// Builds from rows of raw codes. Every row must have `cols` entries.
    pub fn from_rows<R: AsRef<[u32]>>(
        field: FieldSpec,
        cols: usize,
        rows: &[R],
    ) -> Result<Self, MatrixError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::Shape {
                    rows: rows.len(),
                    cols,
                    expected: rows.len() * cols,
                    got: data.len() + r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub(crate) fn from_raw(field: FieldSpec, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub(crate) fn from_code_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<u8>>) -> Self {
        let n = rows.len();
        let data: Vec<u8> = rows.into_iter().flatten().collect();
        Self::from_raw(field, n, cols, data)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self::from_raw(field, rows, cols, vec![0; rows * cols])
    }

    /// The 0-row matrix with `cols` columns: basis of the zero subspace.
    pub fn empty(field: FieldSpec, cols: usize) -> Self {
        Self::zeros(field, 0, cols)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        assert!(self.field.contains(v as u32));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.row_iter().map(<[u8]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Self::from_raw(self.field.clone(), self.cols, self.rows, data)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Columns {
                left: self.cols,
                right: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Self::from_raw(self.field.clone(), self.rows, cols.len(), data)
    }

    /// Drops the listed columns; the rest keep their relative order.
    pub fn delete_columns(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|c| !drop.contains(c)).collect();
        self.select_columns(&keep)
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Self) -> Result<Self, MatrixError> {
        self.compatible(other)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_raw(
            self.field.clone(),
            self.rows + other.rows,
            self.cols,
            data,
        ))
    }

    fn same_field(&self, other: &Self) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::Field);
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<(), MatrixError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::Columns {
                left: self.cols,
                right: other.cols,
            });
        }
        Ok(())
    }

    /// Reduced row-echelon form with zero rows removed, and its (0-based,
    /// ascending) pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let cols = self.cols;
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..cols {
                    m.swap(pr * cols + j, lead * cols + j);
                }
            }
            let scale = f.inv(m[lead * cols + c]).unwrap();
            for j in c..cols {
                m[lead * cols + j] = f.mul(m[lead * cols + j], scale);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = m[r * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let t = f.mul(nf, m[lead * cols + j]);
                    m[r * cols + j] = f.add(m[r * cols + j], t);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        m.truncate(lead * cols);
        (Self::from_raw(f.clone(), lead, cols, m), pivots)
    }

    /// Canonical basis of the row space.
    pub fn canonical(&self) -> Self {
        self.rref().0
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (rows, in RREF) of `{x : self · xᵀ = 0}`.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u8; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            basis.push(v);
        }
        Self::from_code_rows(f.clone(), self.cols, basis).canonical()
    }

    /// Canonical basis of `rowspace(self) + rowspace(other)`.
    pub fn row_space_sum(&self, other: &Self) -> Result<Self, MatrixError> {
        Ok(self.stack(other)?.canonical())
    }

    /// Canonical basis of `rowspace(self) ∩ rowspace(other)`, via the
    /// Zassenhaus block matrix `[[A, A], [B, 0]]`: after reduction, the rows
    /// whose left half vanishes carry a basis of the intersection in their
    /// right half.
    pub fn row_space_intersect(&self, other: &Self) -> Result<Self, MatrixError> {
        self.compatible(other)?;
        let n = self.cols;
        let mut data = Vec::with_capacity((self.rows + other.rows) * 2 * n);
        for r in self.row_iter() {
            data.extend_from_slice(r);
            data.extend_from_slice(r);
        }
        for r in other.row_iter() {
            data.extend_from_slice(r);
            data.extend(std::iter::repeat_n(0, n));
        }
        let block = Self::from_raw(self.field.clone(), self.rows + other.rows, 2 * n, data);
        let (red, _) = block.rref();
        let rows: Vec<Vec<u8>> = red
            .row_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Self::from_code_rows(self.field.clone(), n, rows).canonical())
    }

    /// Whether `v` lies in the row space. Assumes `self` is in RREF with
    /// pivots `pivots` (as returned by [`GfMatrix::rref`]).
    pub fn reduces_to_zero(&self, pivots: &[usize], v: &[u8]) -> bool {
        let f = &self.field;
        let mut v = v.to_vec();
        for (i, &pc) in pivots.iter().enumerate() {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(self.row(i)) {
                *x = f.add(*x, f.mul(nc, y));
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Whether `v` lies in the row space (any basis).
    pub fn contains_row(&self, v: &[u8]) -> bool {
        let (r, p) = self.rref();
        r.reduces_to_zero(&p, v)
    }
}

/// Incrementally grown echelon basis, used when a span has to be extended
/// one vector at a time.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(nc, y));
            }
        }
        v
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = &self.field;
        let s = f.inv(r[pc]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(*x, s);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn to_matrix(&self) -> GfMatrix {
        GfMatrix::from_code_rows(self.field.clone(), self.cols, self.rows.clone()).canonical()
    }
}
