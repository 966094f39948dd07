use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numerical thresholds used by every decision in the crate.
///
/// `rank_tol` is relative to the largest singular value of the matrix under
/// inspection; `ortho_tol` and `eq_tol` are absolute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub rank_tol: T,
    pub ortho_tol: T,
    pub eq_tol: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(rank_tol: T, ortho_tol: T, eq_tol: T) -> Result<Self> {
        let ok = |t: T| t > T::zero() && t.is_finite();
        if !ok(rank_tol) || !ok(ortho_tol) || !ok(eq_tol) {
            return Err(Error::InvalidParameter("tolerances must be positive and finite".into()));
        }
        if rank_tol >= T::one() {
            return Err(Error::InvalidParameter("rank_tol must be < 1".into()));
        }
        Ok(Self {
            rank_tol,
            ortho_tol,
            eq_tol,
        })
    }

    pub fn with_rank_tol(self, rank_tol: T) -> Result<Self> {
        Self::new(rank_tol, self.ortho_tol, self.eq_tol)
    }

    pub fn with_eq_tol(self, eq_tol: T) -> Result<Self> {
        Self::new(self.rank_tol, self.ortho_tol, eq_tol)
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            rank_tol: T::default_rank_tol(),
            ortho_tol: T::default_eq_tol(),
            eq_tol: T::default_eq_tol(),
        }
    }
}
