use crate::scalar::prelude::*;
use std::ops::{Index, IndexMut};

use super::vector::Vector;
use crate::error::{Error, Result};

/// Small dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector<S>]) -> Result<Self> {
        let n = super::vector::common_dim(cols)?;
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = c[i];
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vector<S> {
        Vector::from_vec((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &Vector<S>) -> Vector<S> {
        debug_assert_eq!(x.dim(), self.cols);
        Vector::from_vec(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(x.coords())
                        .map(|(&a, &b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(m)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `self += a * x x^*`.
    pub fn add_outer(&mut self, a: S::Real, x: &Vector<S>) {
        debug_assert!(self.rows == x.dim() && self.cols == x.dim());
        for i in 0..self.rows {
            let xi = x[i].scale(a);
            for j in 0..self.cols {
                self[(i, j)] += xi * x[j].conj();
            }
        }
    }

    pub fn add_scaled(&mut self, a: S::Real, other: &Self) {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        for (s, &o) in self.data.iter_mut().zip(&other.data) {
            *s += o.scale(a);
        }
    }

    pub fn max_abs(&self) -> S::Real {
        self.data
            .iter()
            .map(|c| c.modulus())
            .fold(S::Real::zero(), |a, b| a.max(b))
    }

    /// Largest `|m_ij - conj(m_ji)|`.
    pub fn hermitian_deviation(&self) -> S::Real {
        let mut dev = S::Real::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).modulus());
            }
        }
        dev
    }

    /// Real matrix acting on interleaved realified coordinates.
    ///
    /// Each complex entry `a + ib` becomes the 2x2 block `[[a, -b], [b, a]]`;
    /// real matrices are returned unchanged.
    pub fn realified(&self) -> Matrix<S::Real>
    where
        S::Real: Field<Real = S::Real>,
    {
        if !S::IS_COMPLEX {
            return Matrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|c| c.re()).collect(),
            };
        }
        let mut m = Matrix::<S::Real>::zeros(2 * self.rows, 2 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (a, b) = (self[(i, j)].re(), self[(i, j)].im());
                m[(2 * i, 2 * j)] = a;
                m[(2 * i, 2 * j + 1)] = -b;
                m[(2 * i + 1, 2 * j)] = b;
                m[(2 * i + 1, 2 * j + 1)] = a;
            }
        }
        m
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
