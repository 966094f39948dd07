use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{orthonormalize, tolerant_rank, Subspace, Tolerance, Vector};
use crate::realify::{lift_subspace, rank2};
use crate::scalar::prelude::*;

/// Family of orthogonal projections `{P_i}` on a common space `H^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionFamily<S: Field> {
    ambient_dim: usize,
    members: Vec<Subspace<S>>,
}

impl<S: Field> ProjectionFamily<S> {
    pub fn new(members: Vec<Subspace<S>>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyInput)?;
        let n = first.ambient_dim();
        for m in &members {
            if m.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.ambient_dim(),
                });
            }
        }
        Ok(Self {
            ambient_dim: n,
            members,
        })
    }

    /// Rank-one projections onto the lines spanned by `vectors`.
    pub fn from_vectors(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<Self> {
        let members = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.norm() <= tol.eq_tol {
                    return Err(Error::ZeroVector(i));
                }
                orthonormalize(std::slice::from_ref(v), tol)
            })
            .collect::<Result<Vec<_>>>()?;
        let fam = Self::new(members)?;
        for v in vectors {
            v.check_dim(fam.ambient_dim)?;
        }
        Ok(fam)
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn members(&self) -> &[Subspace<S>] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `[P_1 x, ..., P_m x]`.
    pub fn images(&self, x: &Vector<S>) -> Result<Vec<Vector<S>>> {
        x.check_dim(self.ambient_dim)?;
        Ok(self.images_unchecked(x))
    }

    pub(crate) fn images_unchecked(&self, x: &Vector<S>) -> Vec<Vector<S>> {
        self.members.iter().map(|m| m.project_unchecked(x)).collect()
    }

    /// `[||P_1 x||, ..., ||P_m x||]`.
    pub fn measurements(&self, x: &Vector<S>) -> Result<Vec<S::Real>> {
        x.check_dim(self.ambient_dim)?;
        Ok(self.members.iter().map(|m| m.projection_norm(x)).collect())
    }

    /// `dim span{P_i x}`.
    pub fn image_span_dim(&self, x: &Vector<S>, tol: &Tolerance<S::Real>) -> Result<usize> {
        tolerant_rank(&self.images(x)?, tol)
    }

    pub(crate) fn ensure_nonzero_members(&self) -> Result<()> {
        match self.members.iter().position(|m| m.dim() == 0) {
            Some(i) => Err(Error::ZeroSubspace(i)),
            None => Ok(()),
        }
    }
}

impl<T: Real> ProjectionFamily<Complex<T>> {
    /// Lifts every member `W_i` of `C^n` to `V_i` of `R^{2n}`.
    pub fn lift(&self, tol: &Tolerance<T>) -> Result<ProjectionFamily<T>> {
        let members = self
            .members
            .iter()
            .map(|w| lift_subspace(w, tol).map(|l| l.into_real()))
            .collect::<Result<Vec<_>>>()?;
        ProjectionFamily::new(members)
    }
}

/// The rank-2 family `{P_{v_i}}` on `R^{2n}` attached to complex vectors.
pub fn lift_vector_family<T: Real>(vectors: &[Vector<Complex<T>>], tol: &Tolerance<T>) -> Result<ProjectionFamily<T>> {
    let members = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            rank2(v, tol).map(|p| p.into_subspace()).map_err(|e| match e {
                Error::ZeroVector(_) => Error::ZeroVector(i),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fam = ProjectionFamily::new(members)?;
    Ok(fam)
}

/// `max_j |<x'', P_j x'>|` for a lifted family; identically zero in exact
/// arithmetic because every lifted subspace is invariant under `x' -> x''`.
pub fn companion_overlap<T: Real>(lifted: &ProjectionFamily<T>, x_prime: &Vector<T>) -> Result<T> {
    let j = crate::realify::companion(x_prime)?;
    Ok(lifted
        .images(x_prime)?
        .iter()
        .map(|p| j.dot(p).abs())
        .fold(T::zero(), |a, b| a.max(b)))
}

/// Orthogonal complements `{I - P_i}`.
pub fn complement_family<S: Field>(f: &ProjectionFamily<S>) -> ProjectionFamily<S> {
    ProjectionFamily {
        ambient_dim: f.ambient_dim,
        members: f.members.iter().map(|m| m.complement()).collect(),
    }
}

/// Per-index comparison of the measurements of two vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Distinction<T> {
    /// `||P_j x|| - ||P_j y||`.
    pub gaps: Vec<T>,
    pub separating: Vec<bool>,
    pub first_separating: Option<usize>,
    /// Whether `Re<x - y, P_j (x + y)>` gives the same zero/nonzero
    /// decision on every index.
    pub consistent: bool,
}

impl<T> Distinction<T> {
    pub fn separates(&self) -> bool {
        self.first_separating.is_some()
    }
}

/// Which projections tell `x` and `y` apart.
///
/// Index `j` separates when `| ||P_j x|| - ||P_j y|| | > eq_tol`. The same
/// decision is recomputed from `Re<x - y, P_j(x + y)> = ||P_j x||^2 - ||P_j y||^2`
/// and recorded in `consistent`.
pub fn distinguishes<S: Field>(
    f: &ProjectionFamily<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    tol: &Tolerance<S::Real>,
) -> Result<Distinction<S::Real>> {
    x.check_dim(f.ambient_dim)?;
    y.check_dim(f.ambient_dim)?;
    let sum = x + y;
    let diff = x - y;
    let mut gaps = Vec::with_capacity(f.len());
    let mut separating = Vec::with_capacity(f.len());
    let mut consistent = true;
    for m in &f.members {
        let (nx, ny) = (m.projection_norm(x), m.projection_norm(y));
        let gap = nx - ny;
        let by_norm = gap.abs() > tol.eq_tol;
        let ip = diff.inner(&m.project_unchecked(&sum)).re();
        let by_inner = ip.abs() > tol.eq_tol * (nx + ny);
        // the two tests can only disagree within roundoff of the threshold
        let slack = S::Real::epsilon() * S::Real::lit(64.0) * (S::Real::one() + nx + ny).powi(2);
        if by_norm != by_inner && (ip.abs() - tol.eq_tol * (nx + ny)).abs() > slack {
            consistent = false;
        }
        gaps.push(gap);
        separating.push(by_norm);
    }
    let first_separating = separating.iter().position(|&s| s);
    Ok(Distinction {
        gaps,
        separating,
        first_separating,
        consistent,
    })
}
