//! Dense exact matrices and deterministic Gaussian elimination.
//!
//! Conventions fixed once for the whole crate:
//! * tensor/Kronecker flattening is lexicographic with the left factor major:
//!   basis vector `e_i (x) f_j` gets index `i * dim_f + j`;
//! * `vec` of an r x c matrix is row-major, so `vec(A X B) = (A (x) B^T) vec(X)`;
//! * elimination pivots on the leftmost nonzero column, first nonzero row.

use super::scalar::{Field, Scalar};
use crate::error::FinlinError;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>, // row-major
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert_eq!(s.field(), field, "entry field mismatch");
                entries.push(s);
            }
        }
        Matrix { rows, cols, field, entries }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        for e in &entries {
            assert_eq!(e.field(), field, "entry field mismatch");
        }
        Matrix { rows: r, cols: c, field, entries }
    }

    /// Column vector from scalars.
    pub fn col(field: Field, v: Vec<Scalar>) -> Matrix {
        let rows = v.len();
        Matrix { rows, cols: 1, field, entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() })
            })
    }

    fn check_same_field(&self, other: &Matrix) -> Result<(), FinlinError> {
        if self.field != other.field {
            return Err(FinlinError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, FinlinError> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FinlinError::DimensionMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, FinlinError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        assert_eq!(s.field(), self.field);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FinlinError> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(FinlinError::DimensionMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Kronecker product with lexicographic flattening (left factor major).
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix, FinlinError> {
        self.check_same_field(other)?;
        let mut out = Matrix::zero(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(j, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + j, k * other.cols + l, a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, FinlinError> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(FinlinError::DimensionMismatch("vstack".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, FinlinError> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(FinlinError::DimensionMismatch("hstack".into()));
        }
        let mut m = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Block diagonal of two matrices.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zero(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        m
    }

    /// Row-major vectorization as a column vector.
    pub fn vectorize(&self) -> Matrix {
        Matrix { rows: self.rows * self.cols, cols: 1, field: self.field, entries: self.entries.clone() }
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn from_vec(field: Field, rows: usize, cols: usize, v: &Matrix) -> Matrix {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        Matrix { rows, cols, field, entries: v.entries.clone() }
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |i, _| self.at(i, j).clone())
    }

    /// Reduced row echelon form: returns (rref, pivot columns).
    /// Pivoting is deterministic: leftmost nonzero column, first nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.at(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = m.at(i, j).sub(&m.at(r, j).mul(&factor));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, in deterministic order (free columns ascending).
    /// Each basis vector is a column matrix; count = cols - rank.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = Matrix::zero(self.field, self.cols, 1);
            v.set(fc, 0, self.field.one());
            for (r, &pc) in pivots.iter().enumerate() {
                v.set(pc, 0, rref.at(r, fc).neg());
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Matrix::identity(self.field, self.rows)).expect("same rows");
        let (rref, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots.iter().take(self.rows).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(self.field, self.rows, self.rows, |i, j| {
            rref.at(i, self.cols + j).clone()
        }))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = self.field.one();
        let n = m.rows;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return self.field.zero();
            };
            if pr != c {
                det = det.neg();
                for j in 0..n {
                    let a = m.at(c, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(c, j, b);
                    m.set(pr, j, a);
                }
            }
            det = det.mul(m.at(c, c));
            let inv = m.at(c, c).inv().expect("pivot nonzero");
            for i in (c + 1)..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).mul(&inv);
                for j in c..n {
                    let v = m.at(i, j).sub(&m.at(c, j).mul(&factor));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Outcome of solving `a * x = b`: one particular solution when consistent,
/// plus a basis of the kernel of `a`.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub particular: Option<Matrix>,
    pub kernel_basis: Vec<Matrix>,
}

/// Solves `a * x = b` exactly (b may have several columns).
pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<LinearSolution, FinlinError> {
    if a.field() != b.field() {
        return Err(FinlinError::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    if a.rows() != b.rows() {
        return Err(FinlinError::DimensionMismatch(format!(
            "solve: a has {} rows, b has {}",
            a.rows(),
            b.rows()
        )));
    }
    let aug = a.hstack(b)?;
    let (rref, pivots) = aug.rref();
    // Consistent iff no pivot lies in the b-columns.
    let consistent = pivots.iter().all(|&p| p < a.cols());
    let particular = if consistent {
        let mut x = Matrix::zero(a.field(), a.cols(), b.cols());
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols() {
                x.set(p, j, rref.at(r, a.cols() + j).clone());
            }
        }
        Some(x)
    } else {
        None
    };
    Ok(LinearSolution { particular, kernel_basis: a.kernel_basis() })
}

/// An incremental reduced row span with deterministic pivots. Used for
/// quotient constructions and rank accumulation.
#[derive(Debug, Clone)]
pub struct RowSpan {
    #[allow(dead_code)]
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: Field, cols: usize) -> RowSpan {
        RowSpan { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the span in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in 0..self.cols {
                if !row[j].is_zero() {
                    v[j] = v[j].sub(&row[j].mul(&factor));
                }
            }
        }
    }

    /// Inserts a vector; returns true if the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero leading entry");
        for s in v.iter_mut() {
            *s = s.mul(&inv);
        }
        // Back-eliminate to keep the span fully reduced.
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for j in 0..self.cols {
                if !v[j].is_zero() {
                    row[j] = row[j].sub(&v[j].mul(&factor));
                }
            }
        }
        // Keep rows ordered by pivot column.
        let idx = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(idx, v);
        self.pivots.insert(idx, p);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Free (non-pivot) column indices, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }
}
