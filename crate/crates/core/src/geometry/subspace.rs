use super::linalg::svd_columns;
use super::matrix::Matrix;
use super::tolerance::Tolerance;
use super::vector::{common_dim, Vector};
use super::{orthonormalize, real_generators, tolerant_rank};
use crate::error::{Error, Result};
use crate::scalar::prelude::*;

/// Subspace of `H^n` stored as an orthonormal basis.
///
/// The zero subspace (empty basis) is representable so that complements of
/// the whole space stay in the same type; it induces the zero projection.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<S> {
    ambient_dim: usize,
    basis: Vec<Vector<S>>,
}

impl<S: Field> Subspace<S> {
    /// Accepts a basis that is already orthonormal to `tol.ortho_tol`.
    pub fn from_orthonormal(basis: Vec<Vector<S>>, tol: &Tolerance<S::Real>) -> Result<Self> {
        let n = common_dim(&basis)?;
        if basis.len() > n {
            return Err(Error::NotOrthonormal {
                deviation: f64::INFINITY,
            });
        }
        let dev = gram_deviation(&basis);
        if dev > tol.ortho_tol {
            return Err(Error::NotOrthonormal {
                deviation: dev.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        Ok(Self { ambient_dim: n, basis })
    }

    /// Span of arbitrary vectors (orthonormalized).
    pub fn span(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<Self> {
        orthonormalize(vectors, tol)
    }

    pub(crate) fn from_parts_unchecked(ambient_dim: usize, basis: Vec<Vector<S>>) -> Self {
        Self { ambient_dim, basis }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: (0..n).map(|k| Vector::unit(n, k)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Vec::new(),
        }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[Vector<S>] {
        &self.basis
    }

    /// `Px = sum_i <x, b_i> b_i`.
    pub fn project(&self, x: &Vector<S>) -> Result<Vector<S>> {
        x.check_dim(self.ambient_dim)?;
        Ok(self.project_unchecked(x))
    }

    pub(crate) fn project_unchecked(&self, x: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zeros(self.ambient_dim);
        for b in &self.basis {
            out.axpy(x.inner(b), b);
        }
        out
    }

    /// `||Px||` without forming `Px`.
    pub fn projection_norm(&self, x: &Vector<S>) -> S::Real {
        self.basis
            .iter()
            .map(|b| x.inner(b).modulus_sq())
            .sum::<S::Real>()
            .sqrt()
    }

    /// Dense `sum_i b_i b_i^*`.
    pub fn projection_matrix(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            m.add_outer(S::Real::one(), b);
        }
        m
    }

    pub fn contains(&self, x: &Vector<S>, tol: &Tolerance<S::Real>) -> bool {
        let r = x - &self.project_unchecked(x);
        r.norm() <= tol.eq_tol.max(tol.rank_tol * x.norm())
    }

    /// Sine of the largest principal angle; 1 when dimensions differ.
    ///
    /// Computed from the residual `(I - Q) B` so that nearly equal subspaces
    /// are resolved to roundoff rather than to `sqrt(roundoff)`.
    pub fn distance(&self, other: &Self) -> S::Real {
        if self.ambient_dim != other.ambient_dim || self.dim() != other.dim() {
            return S::Real::one();
        }
        if self.dim() == 0 {
            return S::Real::zero();
        }
        let residuals: Vec<Vector<S>> = self.basis.iter().map(|b| b - &other.project_unchecked(b)).collect();
        let cols: Vec<Vec<S::Real>> = residuals.iter().flat_map(real_generators).collect();
        let rows = cols[0].len();
        let svd = svd_columns(rows, &cols);
        svd.singular_values[0].min(S::Real::one())
    }

    /// Equal iff the concatenated bases have rank equal to the common dimension.
    pub fn same_as(&self, other: &Self, tol: &Tolerance<S::Real>) -> bool {
        if self.ambient_dim != other.ambient_dim || self.dim() != other.dim() {
            return false;
        }
        if self.dim() == 0 {
            return true;
        }
        let all: Vec<Vector<S>> = self.basis.iter().chain(&other.basis).cloned().collect();
        tolerant_rank(&all, tol).map(|r| r == self.dim()).unwrap_or(false)
    }

    /// Orthogonal complement, by completing the basis with standard vectors.
    ///
    /// Each step adds the standard vector with the largest residual against
    /// the current basis (lowest index on ties), so the result is
    /// deterministic and well conditioned.
    pub fn complement(&self) -> Self {
        let n = self.ambient_dim;
        let mut basis = self.basis.clone();
        let start = basis.len();
        while basis.len() < n {
            let mut best: Option<(S::Real, Vector<S>)> = None;
            for k in 0..n {
                let mut w = Vector::unit(n, k);
                for _ in 0..2 {
                    for b in &basis {
                        let c = w.inner(b);
                        w.axpy(-c, b);
                    }
                }
                let r = w.norm();
                if best.as_ref().is_none_or(|(br, _)| r > *br) {
                    best = Some((r, w));
                }
            }
            let (r, w) = best.expect("n > 0");
            basis.push(w.scale_real(r.recip()));
        }
        Self {
            ambient_dim: n,
            basis: basis.split_off(start),
        }
    }
}

/// `max |<b_i, b_j> - delta_ij|`.
pub(crate) fn gram_deviation<S: Field>(basis: &[Vector<S>]) -> S::Real {
    let mut dev = S::Real::zero();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = a.inner(b);
            let target = if i == j { S::one() } else { S::zero() };
            dev = dev.max((g - target).modulus());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn complement_of_axis_line_in_r3() {
        let tol = Tolerance::default();
        let s = Subspace::span(&[v(&[1.0, 0.0, 0.0])], &tol).unwrap();
        let c = s.complement();
        let expected = Subspace::span(&[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], &tol).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.distance(&expected) < 1e-14);
    }

    #[test]
    fn complement_of_whole_space_is_zero() {
        let s = Subspace::<f64>::whole(3);
        assert_eq!(s.complement().dim(), 0);
        assert_eq!(Subspace::<f64>::zero(3).complement().dim(), 3);
    }

    #[test]
    fn from_orthonormal_rejects_skewed_basis() {
        let tol = Tolerance::default();
        let err = Subspace::from_orthonormal(vec![v(&[1.0, 0.0]), v(&[1.0, 1.0])], &tol);
        assert!(matches!(err, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn distance_distinguishes_dimensions() {
        let tol = Tolerance::default();
        let a = Subspace::span(&[v(&[1.0, 0.0])], &tol).unwrap();
        let b = Subspace::<f64>::whole(2);
        assert_eq!(a.distance(&b), 1.0);
        assert!(!a.same_as(&b, &tol));
    }
}
