//! Mutually unbiased bases, their rank-2 transfers, and angle spectra of
//! vector frames and projection families.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::frames::{lift_frame_to_fusion, Frame, FusionFrame};
use crate::geometry::{Subspace, Tolerance, Vector};
use crate::realify::{rank2, subspace_trace_pairing, trace_pairing, RankTwoProjection};
use crate::retrieval::ProjectionFamily;
use crate::scalar::prelude::*;

pub const MUB_MAX_PRIME: u64 = 101;
pub const DEFAULT_CLUSTER_WIDTH: f64 = 1e-6;

/// Verified family of mutually unbiased orthonormal bases of `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MubFamily<T: Real> {
    dim: usize,
    bases: Vec<Vec<Vector<Complex<T>>>>,
    worst_deviation: T,
}

impl<T: Real> MubFamily<T> {
    /// Accepts the bases only if [`verify_mub`] passes.
    pub fn from_bases(bases: Vec<Vec<Vector<Complex<T>>>>, tol: &Tolerance<T>) -> Result<Self> {
        let check = verify_mub(&bases, tol)?;
        if !check.ok {
            return Err(Error::Unverified(format!(
                "bases are not mutually unbiased (worst deviation {:e})",
                check.worst_deviation.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(Self {
            dim: bases[0][0].dim(),
            bases,
            worst_deviation: check.worst_deviation,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> &[Vec<Vector<Complex<T>>>] {
        &self.bases
    }

    pub fn worst_deviation(&self) -> T {
        self.worst_deviation
    }

    /// All basis vectors, basis by basis.
    pub fn vectors(&self) -> Vec<Vector<Complex<T>>> {
        self.bases.iter().flatten().cloned().collect()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `p + 1` mutually unbiased bases of `C^p` for a prime `p`.
///
/// For odd `p`, basis `k` has vectors `(omega^{k l^2 + j l} / sqrt p)_l`
/// next to the standard basis; `p = 2` uses the standard, Hadamard and
/// `(1, +-i)/sqrt 2` bases.
pub fn mub_construct<T: Real>(p: u64, tol: &Tolerance<T>) -> Result<MubFamily<T>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MUB_MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    let n = p as usize;
    let c = |re: f64, im: f64| Complex::new(T::lit(re), T::lit(im));
    let mut bases = vec![(0..n).map(|k| Vector::unit(n, k)).collect::<Vec<_>>()];
    if p == 2 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for second in [c(1.0, 0.0), c(0.0, 1.0)] {
            bases.push(
                [second, -second]
                    .into_iter()
                    .map(|z| Vector::from_vec(vec![c(s, 0.0), z * T::lit(s)]))
                    .collect(),
            );
        }
    } else {
        let scale = T::from_usize_lossy(n).sqrt().recip();
        let step = T::TAU() / T::from_usize_lossy(n);
        for k in 0..n {
            bases.push(
                (0..n)
                    .map(|j| {
                        Vector::from_vec(
                            (0..n)
                                .map(|l| {
                                    let e = (k * l * l + j * l) % n;
                                    let theta = step * T::from_usize_lossy(e);
                                    Complex::new(theta.cos() * scale, theta.sin() * scale)
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            );
        }
    }
    MubFamily::from_bases(bases, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MubVerification<T> {
    pub ok: bool,
    /// `max |<e_i, e_j> - delta_ij|` inside each basis.
    pub within_deviation: T,
    /// `max | |<e, f>|^2 - 1/n |` across bases.
    pub cross_deviation: T,
    pub worst_deviation: T,
}

/// Checks orthonormality inside each basis and `|<e, f>|^2 = 1/n` across
/// bases, with `ok` meaning the worst deviation is at most `eq_tol`.
pub fn verify_mub<T: Real>(bases: &[Vec<Vector<Complex<T>>>], tol: &Tolerance<T>) -> Result<MubVerification<T>> {
    let n = bases.first().and_then(|b| b.first()).ok_or(Error::EmptyInput)?.dim();
    for b in bases {
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        for v in b {
            v.check_dim(n)?;
        }
    }
    let inv_n = T::from_usize_lossy(n).recip();
    let mut within = T::zero();
    let mut cross = T::zero();
    for (a, ba) in bases.iter().enumerate() {
        for (i, e) in ba.iter().enumerate() {
            for (j, f) in ba.iter().enumerate().skip(i) {
                let target = if i == j { T::one() } else { T::zero() };
                within = within.max((e.inner(f) - Complex::new(target, T::zero())).norm());
            }
            for bb in &bases[a + 1..] {
                for f in bb {
                    cross = cross.max((e.inner(f).norm_sqr() - inv_n).abs());
                }
            }
        }
    }
    let worst = within.max(cross);
    Ok(MubVerification {
        ok: worst <= tol.eq_tol,
        within_deviation: within,
        cross_deviation: cross,
        worst_deviation: worst,
    })
}

/// Rank-2 projections of every MUB vector, with the trace checks.
#[derive(Debug, Clone, PartialEq)]
pub struct MubTransfer<T: Real> {
    /// One list of projections per basis.
    pub projections: Vec<Vec<RankTwoProjection<T>>>,
    /// `max |tr P_i P_j|` over distinct vectors of one basis.
    pub within_max: T,
    /// `max |tr P_i Q_j - 2/n|` over vectors of different bases.
    pub cross_max_deviation: T,
    pub ok: bool,
}

impl<T: Real> MubTransfer<T> {
    pub fn family(&self) -> Result<ProjectionFamily<T>> {
        ProjectionFamily::new(
            self.projections
                .iter()
                .flatten()
                .map(|p| p.subspace().clone())
                .collect(),
        )
    }
}

/// Lifts a MUB family and checks within-basis traces 0 and cross traces `2/n`.
pub fn transfer_mub<T: Real>(m: &MubFamily<T>, tol: &Tolerance<T>) -> Result<MubTransfer<T>> {
    if !verify_mub(m.bases(), tol)?.ok {
        return Err(Error::Unverified("input is not a MUB family".into()));
    }
    let projections = m
        .bases()
        .iter()
        .map(|b| b.iter().map(|v| rank2(v, tol)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let target = T::lit(2.0) / T::from_usize_lossy(m.dim());
    let mut within_max = T::zero();
    let mut cross_max_deviation = T::zero();
    for (a, pa) in projections.iter().enumerate() {
        for (i, p) in pa.iter().enumerate() {
            for q in &pa[i + 1..] {
                within_max = within_max.max(trace_pairing(p, q)?.abs());
            }
            for pb in &projections[a + 1..] {
                for q in pb {
                    cross_max_deviation = cross_max_deviation.max((trace_pairing(p, q)? - target).abs());
                }
            }
        }
    }
    Ok(MubTransfer {
        ok: within_max <= tol.eq_tol && cross_max_deviation <= tol.eq_tol,
        projections,
        within_max,
        cross_max_deviation,
    })
}

/// Clustered pairwise angle values.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSpectrum<T> {
    /// Strictly decreasing cluster means.
    pub levels: Vec<T>,
    pub multiplicities: Vec<usize>,
    pub cluster_width: T,
    /// Smallest distance between adjacent levels, if there are two or more.
    pub min_gap: Option<T>,
    pub warning: Option<String>,
}

impl<T: Real> AngleSpectrum<T> {
    /// Single-linkage clustering: sorted values closer than `width` share a
    /// cluster.
    pub fn from_values(mut values: Vec<T>, width: T) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        let mut clusters: Vec<Vec<T>> = Vec::new();
        for v in values {
            match clusters.last_mut() {
                Some(c) if c[c.len() - 1] - v < width => c.push(v),
                _ => clusters.push(vec![v]),
            }
        }
        let levels: Vec<T> = clusters
            .iter()
            .map(|c| c.iter().copied().sum::<T>() / T::from_usize_lossy(c.len()))
            .collect();
        let min_gap = levels.windows(2).map(|w| w[0] - w[1]).reduce(T::min);
        let warning = min_gap.filter(|&g| g < T::lit(10.0) * width).map(|g| {
            format!(
                "levels separated by only {:e}, less than 10x the cluster width {:e}",
                g.to_f64().unwrap_or(f64::NAN),
                width.to_f64().unwrap_or(f64::NAN)
            )
        });
        Self {
            multiplicities: clusters.iter().map(Vec::len).collect(),
            levels,
            cluster_width: width,
            min_gap,
            warning,
        }
    }

    /// Number of levels.
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    pub fn is_equiangular(&self) -> bool {
        self.k() == 1
    }

    pub fn is_biangular(&self) -> bool {
        self.k() == 2
    }
}

/// Spectrum of `{|<v_i, v_j>| : i < j}` for unit vectors.
pub fn angle_spectrum_vectors<S: Field>(
    vectors: &[Vector<S>],
    width: S::Real,
    tol: &Tolerance<S::Real>,
) -> Result<AngleSpectrum<S::Real>> {
    crate::geometry::common_dim(vectors)?;
    for (index, v) in vectors.iter().enumerate() {
        let norm = v.norm();
        if (norm - S::Real::one()).abs() > tol.eq_tol {
            return Err(Error::NotUnitNorm {
                index,
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let mut values = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        for w in &vectors[i + 1..] {
            values.push(v.inner(w).modulus());
        }
    }
    Ok(AngleSpectrum::from_values(values, width))
}

/// Spectrum of `{tr P_i P_j : i < j}`.
pub fn angle_spectrum_projections<S: Field>(f: &ProjectionFamily<S>, width: S::Real) -> Result<AngleSpectrum<S::Real>> {
    let members = f.members();
    let mut values = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            values.push(subspace_trace_pairing(a, b)?);
        }
    }
    Ok(AngleSpectrum::from_values(values, width))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KAngularTransfer<T: Real> {
    pub fusion: FusionFrame<T>,
    pub vector_spectrum: AngleSpectrum<T>,
    pub projection_spectrum: AngleSpectrum<T>,
    pub tight_preserved: bool,
    /// `max |beta_i - 2 alpha_i^2|`; infinite when the level counts differ.
    pub max_level_deviation: T,
    pub consistent: bool,
}

/// Lifts a unit-norm tight complex frame to a fusion frame of planes and
/// compares the two angle spectra.
pub fn transfer_kangular<T: Real>(
    frame: &Frame<Complex<T>>,
    width: T,
    tol: &Tolerance<T>,
) -> Result<KAngularTransfer<T>> {
    let flags = frame.flags();
    if !flags.unit_norm {
        let (index, v) = frame
            .vectors()
            .iter()
            .enumerate()
            .max_by(|a, b| {
                let da = (a.1.norm() - T::one()).abs();
                let db = (b.1.norm() - T::one()).abs();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Error::EmptyInput)?;
        return Err(Error::NotUnitNorm {
            index,
            norm: v.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    if !flags.tight {
        let (a, b) = frame.bounds();
        return Err(Error::NotTight {
            lower: a.to_f64().unwrap_or(f64::NAN),
            upper: b.to_f64().unwrap_or(f64::NAN),
        });
    }
    let fusion = lift_frame_to_fusion(frame, tol)?;
    let vector_spectrum = angle_spectrum_vectors(frame.vectors(), width, tol)?;
    let planes: Vec<Subspace<T>> = fusion.subspaces().to_vec();
    let projection_spectrum = angle_spectrum_projections(&ProjectionFamily::new(planes)?, width)?;
    let max_level_deviation = if vector_spectrum.k() == projection_spectrum.k() {
        vector_spectrum
            .levels
            .iter()
            .zip(&projection_spectrum.levels)
            .map(|(&a, &b)| (b - T::lit(2.0) * a * a).abs())
            .fold(T::zero(), T::max)
    } else {
        T::infinity()
    };
    let tight_preserved = fusion.is_tight(tol);
    Ok(KAngularTransfer {
        consistent: tight_preserved && max_level_deviation <= tol.eq_tol,
        fusion,
        vector_spectrum,
        projection_spectrum,
        tight_preserved,
        max_level_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn cv(c: &[(f64, f64)]) -> Vector<Complex64> {
        Vector::new(c.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn primality_guard() {
        let tol = Tolerance::default();
        assert_eq!(mub_construct::<f64>(4, &tol).unwrap_err(), Error::NotPrime(4));
        assert_eq!(mub_construct::<f64>(1, &tol).unwrap_err(), Error::NotPrime(1));
        assert_eq!(mub_construct::<f64>(103, &tol).unwrap_err(), Error::PrimeTooLarge(103));
    }

    #[test]
    fn small_mub_families() {
        let tol = Tolerance::default();
        for p in [2u64, 3, 5, 7] {
            let m = mub_construct::<f64>(p, &tol).unwrap();
            assert_eq!(m.count(), p as usize + 1);
            assert!(m.worst_deviation() < 1e-12);
        }
    }

    #[test]
    fn standard_basis_twice_is_not_unbiased() {
        let tol = Tolerance::default();
        let e = vec![cv(&[(1.0, 0.0), (0.0, 0.0)]), cv(&[(0.0, 0.0), (1.0, 0.0)])];
        let r = verify_mub(&[e.clone(), e], &tol).unwrap();
        assert!(!r.ok);
        assert!((r.cross_deviation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn clustering_merges_close_values() {
        let s = AngleSpectrum::from_values(vec![0.5, 0.0, 0.5 + 1e-9, 1e-10], 1e-6);
        assert_eq!(s.k(), 2);
        assert_eq!(s.multiplicities, vec![2, 2]);
        assert!(s.warning.is_none());
        let close = AngleSpectrum::from_values(vec![0.5, 0.500002], 1e-6);
        assert_eq!(close.k(), 2);
        assert!(close.warning.is_some());
    }

    #[test]
    fn non_unit_vectors_rejected() {
        let tol = Tolerance::default();
        let r = angle_spectrum_vectors(&[cv(&[(2.0, 0.0)]), cv(&[(1.0, 0.0)])], 1e-6, &tol);
        assert!(matches!(r, Err(Error::NotUnitNorm { index: 0, .. })));
    }
}
