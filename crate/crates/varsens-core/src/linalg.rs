//! Minimal dense linear algebra for kernel matrices.
//!
//! Row-major storage; everything the surrogate needs is a Cholesky
//! factorization with triangular solves, so that is all there is.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::float;

#[derive(Clone, Debug, PartialEq)]
pub enum LinalgError {
    NotSquare { rows: usize, cols: usize },
    /// Leading minor at `pivot` is not positive definite.
    NotPositiveDefinite { pivot: usize },
    DimMismatch { expected: usize, found: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            LinalgError::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot})")
            }
            LinalgError::DimMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// Dense row-major matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from row-major data; panics if the length is inconsistent.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Extracts the rows `range` as a new matrix.
    pub fn slice_rows(&self, start: usize, end: usize) -> Matrix {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Lower-triangular Cholesky factor `L` with `L Lᵀ = A`.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    lower: Matrix,
}

/// Cholesky–Banachiewicz factorization of a symmetric positive definite
/// matrix. Fails on the first non-positive pivot.
pub fn cholesky(a: &Matrix) -> Result<CholeskyFactor, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let s = if i == j {
                let row = &l.row(i)[..j];
                dot(row, row)
            } else {
                let (head, tail) = l.data.split_at(i * n);
                dot(&head[j * n..j * n + j], &tail[..j])
            };
            if i == j {
                let d = a[(i, i)] - s;
                if !(d > 0.0) || !d.is_finite() {
                    return Err(LinalgError::NotPositiveDefinite { pivot: i });
                }
                l[(i, i)] = float::sqrt(d);
            } else {
                l[(i, j)] = (a[(i, j)] - s) / l[(j, j)];
            }
        }
    }
    Ok(CholeskyFactor { lower: l })
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.lower.rows()
    }

    pub fn lower(&self) -> &Matrix {
        &self.lower
    }

    /// log det A = 2 Σ log L_ii
    pub fn log_det(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            s += float::ln(self.lower[(i, i)]);
        }
        2.0 * s
    }

    /// Solves `L y = b`.
    pub fn forward_sub(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let n = self.dim();
        if b.len() != n {
            return Err(LinalgError::DimMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let mut y = b.to_vec();
        for i in 0..n {
            let row = self.lower.row(i);
            let s = dot(&row[..i], &y[..i]);
            y[i] = (y[i] - s) / row[i];
        }
        Ok(y)
    }

    /// Solves `Lᵀ x = y`.
    pub fn back_sub(&self, y: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let n = self.dim();
        if y.len() != n {
            return Err(LinalgError::DimMismatch {
                expected: n,
                found: y.len(),
            });
        }
        let mut x = y.to_vec();
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.lower[(k, i)] * x[k];
            }
            x[i] = s / self.lower[(i, i)];
        }
        Ok(x)
    }

    /// Solves `A x = b` via the two triangular solves.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        self.back_sub(&self.forward_sub(b)?)
    }

    /// Solves `L V = B` column-wise, returning `V` with the shape of `B`.
    pub fn forward_sub_matrix(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        let n = self.dim();
        if b.rows() != n {
            return Err(LinalgError::DimMismatch {
                expected: n,
                found: b.rows(),
            });
        }
        let mut v = b.clone();
        for i in 0..n {
            let inv_diag = 1.0 / self.lower[(i, i)];
            for k in 0..i {
                let lik = self.lower[(i, k)];
                if lik != 0.0 {
                    let (head, tail) = v.data.split_at_mut(i * v.cols);
                    let vk = &head[k * v.cols..(k + 1) * v.cols];
                    let vi = &mut tail[..v.cols];
                    for (vi_j, vk_j) in vi.iter_mut().zip(vk) {
                        *vi_j -= lik * vk_j;
                    }
                }
            }
            for x in v.row_mut(i) {
                *x *= inv_diag;
            }
        }
        Ok(v)
    }

    /// `L z` for a vector `z`.
    pub fn lower_matvec(&self, z: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let n = self.dim();
        if z.len() != n {
            return Err(LinalgError::DimMismatch {
                expected: n,
                found: z.len(),
            });
        }
        let mut out = vec![0.0; n];
        for i in 0..n {
            out[i] = dot(&self.lower.row(i)[..=i], &z[..=i]);
        }
        Ok(out)
    }
}

/// `VᵀV` for a matrix `V` (result is `cols x cols`, symmetric PSD).
///
/// Works on the transpose so the inner dot products run over contiguous rows.
pub fn vtv(v: &Matrix) -> Matrix {
    let w = v.transpose();
    let m = w.rows();
    let mut out = Matrix::zeros(m, m);
    for i in 0..m {
        let wi = w.row(i);
        for j in 0..=i {
            let s = dot(wi, w.row(j));
            out[(i, j)] = s;
            out[(j, i)] = s;
        }
    }
    out
}
