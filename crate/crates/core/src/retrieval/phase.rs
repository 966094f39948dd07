use num_complex::Complex;

use super::family::{companion_overlap, distinguishes, lift_vector_family, ProjectionFamily};
use super::report::{CheckReport, SearchOptions, Verdict};
use super::search::{Probe, SearchOutcome};
use crate::error::{Error, Result};
use crate::geometry::{tolerant_rank, Subspace, Tolerance, Vector};
use crate::realify::{scalar_between, unlift};
use crate::scalar::prelude::*;

/// `w`, `v` with `w + v = x`, `w - v = y`.
fn halves<S: Field>(x: &Vector<S>, y: &Vector<S>) -> (Vector<S>, Vector<S>) {
    let half = S::Real::lit(0.5);
    ((x + y).scale_real(half), (x - y).scale_real(half))
}

fn not_sign_related<T: Real>(w: &Vector<T>, v: &Vector<T>, tol: &Tolerance<T>) -> bool {
    (w - v).norm() > tol.eq_tol && (w + v).norm() > tol.eq_tol
}

/// Whether `w = c v` for a scalar with `|c| = 1` (within tolerance).
pub fn unimodular_related<T: Real>(w: &Vector<Complex<T>>, v: &Vector<Complex<T>>, tol: &Tolerance<T>) -> bool {
    let (zw, zv) = (w.norm() <= tol.eq_tol, v.norm() <= tol.eq_tol);
    if zw || zv {
        return zw && zv;
    }
    match scalar_between(w, v, tol) {
        Ok(Some(c)) => (c.norm() - T::one()).abs() <= tol.eq_tol,
        _ => false,
    }
}

/// The pair `((x + y)/2, (x - y)/2)` for a unit `y` orthogonal to
/// `M = span{P_i x}`, if `M` is deficient and the pair re-verifies as
/// indistinguishable with `w != +-v`.
pub fn indistinguishable_pair<T: Real>(
    f: &ProjectionFamily<T>,
    x: &Vector<T>,
    tol: &Tolerance<T>,
) -> Result<Option<(Vector<T>, Vector<T>)>> {
    x.check_dim(f.ambient_dim())?;
    if x.norm() <= tol.eq_tol {
        return Err(Error::ZeroVector(0));
    }
    Ok(real_witness(f, x, tol).map(|(w, v, _, _, _)| (w, v)))
}

/// `(w, v, x, y, dim M)`, where `x` is the probe actually used.
type RealWitness<T> = (Vector<T>, Vector<T>, Vector<T>, Vector<T>, usize);

fn real_witness<T: Real>(f: &ProjectionFamily<T>, x: &Vector<T>, tol: &Tolerance<T>) -> Option<RealWitness<T>> {
    let probe = Probe::new(f, false);
    probe.snapped(x, tol).into_iter().chain([x.clone()]).find_map(|x| {
        let (y, rank) = probe.orthogonal_direction(&x, tol)?;
        let (w, v) = halves(&x, &y);
        let d = distinguishes(f, &w, &v, tol).ok()?;
        (!d.separates() && not_sign_related(&w, &v, tol)).then_some((w, v, x, y, rank))
    })
}

fn probabilistic_pass<S: Field>(outcome: &SearchOutcome<S::Real>, seed: u64) -> CheckReport<S> {
    let mut r = CheckReport::pass(Verdict::PassProbabilistic);
    r.samples_used = outcome.samples_used;
    r.restarts_used = outcome.restarts_used;
    r.residual = outcome.candidates.first().map_or(S::Real::zero(), |c| c.ratio);
    r.seed = Some(seed);
    r
}

/// Phase retrieval by real projections: `span{P_i x} = R^n` for all `x != 0`.
///
/// Failure is certified by an explicit indistinguishable pair; a pass means
/// the randomized search found no deficient probe.
pub fn edidin_check<T: Real>(f: &ProjectionFamily<T>, opts: &SearchOptions<T>) -> Result<CheckReport<T>> {
    let tol = &opts.tol;
    let outcome = Probe::new(f, false).search(opts, "edidin");
    let mut unverified = 0;
    for c in outcome.candidates.iter().filter(|c| c.ratio <= tol.rank_tol) {
        if let Some((w, v, x, y, rank)) = real_witness(f, &c.x, tol) {
            let mut r = CheckReport::pass(Verdict::CertifiedFail);
            r.witness_x = Some(w);
            r.witness_y = Some(v);
            r.probe_x = Some(x);
            r.probe_y = Some(y);
            r.deficient_span_dim = Some(rank);
            r.samples_used = outcome.samples_used;
            r.restarts_used = outcome.restarts_used;
            r.residual = c.ratio;
            r.seed = Some(opts.seed);
            return Ok(r);
        }
        unverified += 1;
    }
    let mut r = probabilistic_pass(&outcome, opts.seed);
    if unverified > 0 {
        r.notes.push(format!(
            "{unverified} deficient candidate(s) produced no verifiable witness pair"
        ));
    }
    Ok(r)
}

/// Searches a lifted family for `x'` with `dim span{P_j x'} < 2n - 1` and
/// certifies failures through `measurement_equal` on the unlifted pair.
fn lifted_check<T: Real>(
    lifted: &ProjectionFamily<T>,
    opts: &SearchOptions<T>,
    label: &str,
    measurement_equal: impl Fn(&Vector<Complex<T>>, &Vector<Complex<T>>) -> bool,
) -> Result<CheckReport<Complex<T>>> {
    let tol = &opts.tol;
    let probe = Probe::new(lifted, true);
    let outcome = probe.search(opts, label);
    let mut unverified = 0;
    for c in outcome.candidates.iter().filter(|c| c.ratio <= tol.rank_tol) {
        let witness = probe.snapped(&c.x, tol).into_iter().chain([c.x.clone()]).find_map(|x| {
            let (y, rank) = probe.orthogonal_direction(&x, tol)?;
            let (w_r, v_r) = halves(&x, &y);
            let (w, v) = (unlift(&w_r).ok()?, unlift(&v_r).ok()?);
            (measurement_equal(&w, &v) && !unimodular_related(&w, &v, tol)).then_some((w, v, x, y, rank))
        });
        if let Some((w, v, x, y, rank)) = witness {
            let mut r = CheckReport::pass(Verdict::CertifiedFail);
            r.witness_x = Some(w);
            r.witness_y = Some(v);
            r.probe_x = Some(x);
            r.probe_y = Some(y);
            r.deficient_span_dim = Some(rank);
            r.samples_used = outcome.samples_used;
            r.restarts_used = outcome.restarts_used;
            r.residual = c.ratio;
            r.seed = Some(opts.seed);
            return Ok(r);
        }
        unverified += 1;
    }
    // every probe must also see x'' orthogonal to M(x')
    let worst = outcome
        .candidates
        .iter()
        .map(|c| companion_overlap(lifted, &c.x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(T::zero(), T::max);
    if worst > tol.eq_tol {
        return Err(Error::Unverified(format!(
            "companion direction not orthogonal to the measurement span (overlap {worst})"
        )));
    }
    let mut r = probabilistic_pass(&outcome, opts.seed);
    r.notes.push(format!(
        "hyperplane criterion held on {} probes; max |<x'', P_j x'>| = {:e}",
        outcome.candidates.len(),
        worst.to_f64().unwrap_or(f64::NAN)
    ));
    if unverified > 0 {
        r.notes.push(format!(
            "{unverified} deficient candidate(s) produced no verifiable witness pair"
        ));
    }
    Ok(r)
}

/// Phase retrieval by complex vectors, via the rank-2 lifts `P_{v_j}`.
///
/// The measurements of the returned witness pair are recomputed directly as
/// `|<w, v_j>|` and `|<v, v_j>|`.
pub fn complex_pr_check<T: Real>(
    vectors: &[Vector<Complex<T>>],
    opts: &SearchOptions<T>,
) -> Result<CheckReport<Complex<T>>> {
    let lifted = lift_vector_family(vectors, &opts.tol)?;
    let eq = opts.tol.eq_tol;
    lifted_check(&lifted, opts, "complex-pr", |w, v| {
        vectors
            .iter()
            .all(|f| (w.inner(f).norm() - v.inner(f).norm()).abs() <= eq)
    })
}

/// Phase retrieval by complex subspaces, via their real lifts.
pub fn complex_projection_pr_check<T: Real>(
    subspaces: &[Subspace<Complex<T>>],
    opts: &SearchOptions<T>,
) -> Result<CheckReport<Complex<T>>> {
    let family = ProjectionFamily::new(subspaces.to_vec())?;
    family.ensure_nonzero_members()?;
    let lifted = family.lift(&opts.tol)?;
    lifted_check(&lifted, opts, "complex-projection-pr", |w, v| {
        distinguishes(&family, w, v, &opts.tol).is_ok_and(|d| !d.separates())
    })
}

/// `(|I|, dim span{v_i : i in I})` for `I = {i : <x, v_i> != 0}`.
pub fn nonvanishing_support_stats<T: Real>(
    vectors: &[Vector<Complex<T>>],
    x: &Vector<Complex<T>>,
    tol: &Tolerance<T>,
) -> Result<(usize, usize)> {
    let nx = x.norm();
    if nx <= tol.eq_tol {
        return Err(Error::ZeroVector(0));
    }
    for v in vectors {
        v.check_dim(x.dim())?;
    }
    let support: Vec<Vector<Complex<T>>> = vectors
        .iter()
        .filter(|v| x.inner(v).norm() > tol.eq_tol * nx * v.norm())
        .cloned()
        .collect();
    if support.is_empty() {
        return Ok((0, 0));
    }
    Ok((support.len(), tolerant_rank(&support, tol)?))
}
