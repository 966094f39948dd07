use crate::scalar::prelude::*;
use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};

/// Dense coordinate vector over a real or complex field.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    coords: Vec<S>,
}

impl<S: Field> Vector<S> {
    /// Validating constructor: nonempty and finite.
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !coords.iter().all(|c| c.all_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Wraps coordinates produced by arithmetic on already-valid vectors.
    pub(crate) fn from_vec(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![S::zero(); dim],
        }
    }

    /// Standard basis vector `e_k` (0-based).
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = S::one();
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    /// `<self, other> = sum self_i * conj(other_i)`; conjugates the second argument.
    pub fn inner(&self, other: &Self) -> S {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(&a, &b)| a * b.conj()).sum()
    }

    pub fn norm_sq(&self) -> S::Real {
        self.coords.iter().map(|c| c.modulus_sq()).sum()
    }

    pub fn norm(&self) -> S::Real {
        // scaled to avoid overflow/underflow in the sum of squares
        let big = self
            .coords
            .iter()
            .map(|c| c.re().abs().max(c.im().abs()))
            .fold(S::Real::zero(), |a, b| a.max(b));
        if big == S::Real::zero() {
            return big;
        }
        let inv = big.recip();
        let s: S::Real = self.coords.iter().map(|c| c.scale(inv).modulus_sq()).sum();
        big * s.sqrt()
    }

    pub fn scale(&self, a: S) -> Self {
        Self::from_vec(self.coords.iter().map(|&c| c * a).collect())
    }

    pub fn scale_real(&self, a: S::Real) -> Self {
        Self::from_vec(self.coords.iter().map(|&c| c.scale(a)).collect())
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: S, x: &Self) {
        debug_assert_eq!(self.dim(), x.dim());
        for (s, &xi) in self.coords.iter_mut().zip(&x.coords) {
            *s += a * xi;
        }
    }

    /// Unit vector in the same direction, `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == S::Real::zero() {
            None
        } else {
            Some(self.scale_real(n.recip()))
        }
    }

    pub fn is_zero(&self, tol: S::Real) -> bool {
        self.norm() <= tol
    }

    /// Largest coordinate modulus difference.
    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a - b).modulus())
            .fold(S::Real::zero(), |a, b| a.max(b))
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl<T: Real> Vector<T>
where
    T: Field<Real = T>,
{
    /// Real dot product.
    pub fn dot(&self, other: &Self) -> T {
        self.inner(other)
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: Field> Add for &Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: Self) -> Vector<S> {
        Vector::from_vec(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a + b).collect())
    }
}

impl<S: Field> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: Self) -> Vector<S> {
        Vector::from_vec(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a - b).collect())
    }
}

impl<S: Field> Neg for &Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        Vector::from_vec(self.coords.iter().map(|&a| -a).collect())
    }
}

/// Checks that a list is nonempty and shares one dimension, returning it.
pub(crate) fn common_dim<S: Field>(vectors: &[Vector<S>]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let d = first.dim();
    for v in vectors {
        v.check_dim(d)?;
    }
    Ok(d)
}
