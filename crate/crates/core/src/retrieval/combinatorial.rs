use itertools::Itertools;
use rayon::prelude::*;

use super::report::{CheckReport, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{tolerant_rank, Tolerance, Vector};
use crate::scalar::prelude::*;

pub const COMPLEMENT_PROPERTY_MAX_VECTORS: usize = 24;
pub const FULL_SPARK_MAX_SUBSETS: u128 = 1_000_000;

fn check_family<S: Field>(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<usize> {
    let n = crate::geometry::common_dim(vectors)?;
    if let Some(i) = vectors.iter().position(|v| v.norm() <= tol.eq_tol) {
        return Err(Error::ZeroVector(i));
    }
    Ok(n)
}

fn spans<S: Field>(
    vectors: &[Vector<S>],
    idx: impl Iterator<Item = usize>,
    n: usize,
    tol: &Tolerance<S::Real>,
) -> bool {
    let side: Vec<Vector<S>> = idx.map(|i| vectors[i].clone()).collect();
    side.len() >= n && tolerant_rank(&side, tol).is_ok_and(|r| r == n)
}

/// Exhaustive complement-property test over all `2^(m-1)` bipartitions.
///
/// Bipartitions are enumerated as bit masks of `I` with the last vector
/// always in `I^c`; the reported `I` is the violating mask of smallest value.
pub fn complement_property<S: Field>(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<CheckReport<S>> {
    let n = check_family(vectors, tol)?;
    let m = vectors.len();
    if m > COMPLEMENT_PROPERTY_MAX_VECTORS {
        return Err(Error::TooLarge {
            what: "complement-property family",
            size: m as u128,
            limit: COMPLEMENT_PROPERTY_MAX_VECTORS as u128,
        });
    }
    let half: u32 = 1 << (m - 1);
    let bit = |mask: u32, i: usize| mask & (1 << i) != 0;
    let violation = (0..half).into_par_iter().find_first(|&mask| {
        !spans(vectors, (0..m).filter(|&i| bit(mask, i)), n, tol)
            && !spans(vectors, (0..m).filter(|&i| !bit(mask, i)), n, tol)
    });
    Ok(match violation {
        None => {
            let mut r = CheckReport::pass(Verdict::PassExhaustive);
            r.samples_used = half as usize;
            r
        }
        Some(mask) => {
            let mut r = CheckReport::pass(Verdict::CertifiedFail);
            r.violating_subset = Some((0..m).filter(|&i| bit(mask, i)).collect());
            r.samples_used = mask as usize + 1;
            r
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSpark {
    pub full: bool,
    /// First `n`-subset (lexicographic, 0-based) that fails to span.
    pub defective_subset: Option<Vec<usize>>,
}

fn binomial(m: usize, k: usize) -> u128 {
    let k = k.min(m - k.min(m));
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1))
}

/// Whether every `n`-subset spans `H^n`.
pub fn full_spark<S: Field>(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<FullSpark> {
    let n = check_family(vectors, tol)?;
    let m = vectors.len();
    if m < n {
        return Ok(FullSpark {
            full: true,
            defective_subset: None,
        });
    }
    let count = binomial(m, n);
    if count > FULL_SPARK_MAX_SUBSETS {
        return Err(Error::TooLarge {
            what: "number of n-subsets",
            size: count,
            limit: FULL_SPARK_MAX_SUBSETS,
        });
    }
    let defective = (0..m)
        .combinations(n)
        .find(|subset| !spans(vectors, subset.iter().copied(), n, tol));
    Ok(FullSpark {
        full: defective.is_none(),
        defective_subset: defective,
    })
}
