//! Dense real/complex linear algebra with an explicit tolerance policy.
//!
//! Every span, rank and eigenvalue decision in the crate goes through this
//! module. Complex rank questions are answered on the realified generators
//! `{v', v''}`, whose real rank is exactly twice the complex rank.

mod linalg;
mod matrix;
mod subspace;
mod tolerance;
mod vector;

pub use linalg::{svd_columns, symmetric_eigenvalues, Svd};
pub use matrix::Matrix;
pub use subspace::Subspace;
pub use tolerance::Tolerance;
pub use vector::Vector;

pub(crate) use subspace::gram_deviation;
pub(crate) use vector::common_dim;

use crate::error::{Error, Result};
use crate::scalar::prelude::*;

/// Real generators of the real span of `v`: `[v]` for real vectors,
/// `[v', v'']` (interleaved layout) for complex ones.
pub(crate) fn real_generators<S: Field>(v: &Vector<S>) -> Vec<Vec<S::Real>> {
    if S::IS_COMPLEX {
        let mut a = Vec::with_capacity(2 * v.dim());
        let mut b = Vec::with_capacity(2 * v.dim());
        for &c in v.coords() {
            a.push(c.re());
            a.push(c.im());
            b.push(-c.im());
            b.push(c.re());
        }
        vec![a, b]
    } else {
        vec![v.coords().iter().map(|c| c.re()).collect()]
    }
}

/// Gram–Schmidt with one full reorthogonalization pass.
///
/// A vector is dropped when its residual falls below
/// `rank_tol * (largest input norm)`.
pub fn orthonormalize<S: Field>(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<Subspace<S>> {
    let n = common_dim(vectors)?;
    let max_norm = vectors.iter().map(|v| v.norm()).fold(S::Real::zero(), |a, b| a.max(b));
    if max_norm == S::Real::zero() {
        return Err(Error::EmptySpan);
    }
    let cutoff = tol.rank_tol * max_norm;
    let mut basis: Vec<Vector<S>> = Vec::new();
    for v in vectors {
        if basis.len() == n {
            break;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = w.inner(b);
                w.axpy(-c, b);
            }
        }
        let r = w.norm();
        if r > cutoff {
            basis.push(w.scale_real(r.recip()));
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptySpan);
    }
    Ok(Subspace::from_parts_unchecked(n, basis))
}

/// Orthogonal projection of `x` onto `s`.
pub fn project<S: Field>(s: &Subspace<S>, x: &Vector<S>) -> Result<Vector<S>> {
    s.project(x)
}

/// Singular values of the matrix with the given vectors as columns
/// (complex vectors are realified, so each value appears twice).
pub(crate) fn real_singular_values<S: Field>(vectors: &[Vector<S>]) -> Vec<S::Real> {
    let cols: Vec<Vec<S::Real>> = vectors.iter().flat_map(real_generators).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    if cols.len() <= rows {
        return svd_columns(rows, &cols).singular_values;
    }
    // wide input: the transpose has the same nonzero singular values
    let transposed: Vec<Vec<S::Real>> = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let mut sv = svd_columns(cols.len(), &transposed).singular_values;
    sv.resize(cols.len(), S::Real::zero());
    sv
}

/// Number of singular values above `rank_tol * sigma_max`; 0 for all-zero input.
pub fn tolerant_rank<S: Field>(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<usize> {
    common_dim(vectors)?;
    let sv = real_singular_values(vectors);
    Ok(rank_from_singular_values(&sv, tol.rank_tol) / if S::IS_COMPLEX { 2 } else { 1 })
}

pub(crate) fn rank_from_singular_values<T: Real>(sv: &[T], rank_tol: T) -> usize {
    let top = sv.iter().fold(T::zero(), |a, &b| a.max(b));
    if top == T::zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * top).count()
}

/// Extreme eigenvalues `(lambda_min, lambda_max)` of a symmetric or
/// Hermitian matrix.
pub fn symmetric_extremes<S: Field>(m: &Matrix<S>, tol: &Tolerance<S::Real>) -> Result<(S::Real, S::Real)>
where
    S::Real: Field<Real = S::Real>,
{
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Err(Error::EmptyInput);
    }
    let scale = m.max_abs().max(S::Real::one());
    let dev = m.hermitian_deviation();
    if dev > tol.ortho_tol * scale {
        return Err(Error::NotSymmetric {
            deviation: dev.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    let ev = symmetric_eigenvalues(&m.realified());
    Ok((ev[0], ev[ev.len() - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn orthonormalize_axis_vectors() {
        let s = orthonormalize(&[v(&[1.0, 0.0]), v(&[0.0, 2.0])], &Tolerance::default()).unwrap();
        assert_eq!(s.basis(), &[v(&[1.0, 0.0]), v(&[0.0, 1.0])]);
    }

    #[test]
    fn orthonormalize_drops_dependent_vector() {
        let s = orthonormalize(&[v(&[1.0, 0.0]), v(&[1.0, 1e-16])], &Tolerance::default()).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], v(&[1.0, 0.0]));
    }

    #[test]
    fn orthonormalize_gram_is_identity() {
        let s = orthonormalize(&[v(&[1.0, 1.0]), v(&[1.0, 0.0])], &Tolerance::default()).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(gram_deviation(s.basis()) < 1e-12);
    }

    #[test]
    fn orthonormalize_all_zero_is_empty_span() {
        let r = orthonormalize(&[v(&[0.0, 0.0]), v(&[0.0, 0.0])], &Tolerance::default());
        assert_eq!(r.unwrap_err(), Error::EmptySpan);
    }

    #[test]
    fn project_onto_coordinate_plane() {
        let tol = Tolerance::default();
        let s = Subspace::span(&[v(&[1.0, 0.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0, 0.0])], &tol).unwrap();
        let p = project(&s, &v(&[3.0, 4.0, 5.0, 6.0])).unwrap();
        assert_eq!(p, v(&[3.0, 4.0, 0.0, 0.0]));
        assert!(matches!(
            project(&s, &v(&[1.0, 2.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tolerant_rank_examples() {
        let tol = Tolerance::default();
        let r = tolerant_rank(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[1.0, 1.0, 0.0])], &tol).unwrap();
        assert_eq!(r, 2);
        assert_eq!(tolerant_rank(&[v(&[0.0, 0.0, 0.0])], &tol).unwrap(), 0);
        assert!(tolerant_rank(&[v(&[1.0]), v(&[1.0, 2.0])], &tol).is_err());
    }

    #[test]
    fn complex_rank_counts_complex_dimensions() {
        let tol = Tolerance::default();
        let a = Vector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let ia = a.scale(Complex64::new(0.0, 1.0));
        // a and ia are complex-parallel
        assert_eq!(tolerant_rank(&[a.clone(), ia], &tol).unwrap(), 1);
        let b = Vector::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        assert_eq!(tolerant_rank(&[a, b], &tol).unwrap(), 2);
    }

    #[test]
    fn symmetric_extremes_examples() {
        let tol = Tolerance::default();
        let (lo, hi) = symmetric_extremes(&Matrix::<f64>::identity(3), &tol).unwrap();
        assert_eq!((lo, hi), (1.0, 1.0));
        let (lo, hi) = symmetric_extremes(&Matrix::from_diagonal(&[0.0, 5.0]), &tol).unwrap();
        assert_eq!((lo, hi), (0.0, 5.0));
        let bad = Matrix::from_row_major(2, 2, vec![1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            symmetric_extremes(&bad, &tol),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn mercedes_benz_frame_operator_by_hand() {
        // Sum of v v^T for unit vectors at 90, 210, 330 degrees, assembled
        // entrywise: xx = 0 + 3/4 + 3/4, yy = 1 + 1/4 + 1/4, xy = 0.
        let m = Matrix::from_row_major(2, 2, vec![1.5, 0.0, 0.0, 1.5]).unwrap();
        let mut built = Matrix::<f64>::zeros(2, 2);
        for k in 0..3 {
            let t = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            built.add_outer(1.0, &v(&[t.cos(), t.sin()]));
        }
        assert!(built.max_abs() > 0.0);
        for i in 0..2 {
            for j in 0..2 {
                assert!((built[(i, j)] - m[(i, j)]).abs() < 1e-15);
            }
        }
        let (lo, hi) = symmetric_extremes(&built, &Tolerance::default()).unwrap();
        assert!((lo - 1.5).abs() < 1e-12 && (hi - 1.5).abs() < 1e-12);
    }

    #[test]
    fn hermitian_extremes_via_realification() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = Matrix::from_row_major(
            2,
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let (lo, hi) = symmetric_extremes(&m, &Tolerance::default()).unwrap();
        assert!((lo - 1.0).abs() < 1e-13 && (hi - 3.0).abs() < 1e-13);
    }
}
