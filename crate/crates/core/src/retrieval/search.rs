//! Search for probes `x` at which `M(x) = span{P_i x}` loses dimension.
//!
//! The search minimizes the bilinear form `g(x, y) = sum_i (y . P_i x)^2`
//! over unit `x`, `y` by alternating exact block minimizations: with `x`
//! fixed the best `y` is the smallest left singular vector of
//! `A(x) = [P_1 x, ..., P_m x]`, and since every `P_i` is symmetric the
//! `x`-step has the same form with the roles swapped. `g` vanishes exactly
//! at pairs with `y` orthogonal to `M(x)`.
//!
//! For lifted complex families `x''` always lies in `M(x')^perp`, so the
//! partner is restricted to the orthogonal complement of `x''` and the target
//! is the second smallest singular value.

use rayon::prelude::*;

use super::family::ProjectionFamily;
use super::report::SearchOptions;
use crate::geometry::{svd_columns, Svd, Tolerance, Vector};
use crate::realify::companion_unchecked;
use crate::rng::{unit_real, Streams};
use crate::scalar::prelude::*;

/// Real projection family seen as a map `x -> A(x)`.
pub(crate) struct Probe<'a, T: Real> {
    family: &'a ProjectionFamily<T>,
    /// Lifted complex family: `x''` is a structural null direction.
    paired: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Candidate<T: Real> {
    pub x: Vector<T>,
    /// Relative target singular value `sigma_target / sigma_1` at `x`.
    pub ratio: T,
}

pub(crate) struct SearchOutcome<T: Real> {
    /// Ascending by ratio; ties keep discovery order.
    pub candidates: Vec<Candidate<T>>,
    pub samples_used: usize,
    pub restarts_used: usize,
}

impl<'a, T: Real> Probe<'a, T> {
    pub fn new(family: &'a ProjectionFamily<T>, paired: bool) -> Self {
        Self { family, paired }
    }

    fn dim(&self) -> usize {
        self.family.ambient_dim()
    }

    /// Index of the singular value that decides deficiency.
    fn target(&self) -> usize {
        if self.paired {
            self.dim() - 2
        } else {
            self.dim() - 1
        }
    }

    /// SVD of `A(x)^T`; its right singular vectors are the left singular
    /// vectors of `A(x)`, one per coordinate of the ambient space.
    pub fn left_svd(&self, x: &Vector<T>) -> Svd<T> {
        let images = self.family.images_unchecked(x);
        let m = images.len();
        let cols: Vec<Vec<T>> = (0..self.dim()).map(|k| images.iter().map(|p| p[k]).collect()).collect();
        svd_columns(m, &cols)
    }

    pub fn ratio(&self, x: &Vector<T>) -> T {
        ratio_of(&self.left_svd(x), self.target())
    }

    /// Minimizer of `sum_i (y . P_i x)^2` over unit `y` (with `y` orthogonal
    /// to `x''` in the paired case), and the minimal value's square root.
    fn partner(&self, x: &Vector<T>) -> (Vector<T>, T) {
        let images = self.family.images_unchecked(x);
        let m = images.len();
        let n = self.dim();
        let basis: Vec<Vector<T>> = if self.paired {
            complement_basis(&companion_unchecked(x))
        } else {
            (0..n).map(|k| Vector::unit(n, k)).collect()
        };
        let cols: Vec<Vec<T>> = basis
            .iter()
            .map(|q| images.iter().map(|p| q.dot(p)).collect())
            .collect();
        let svd = svd_columns(m, &cols);
        let last = basis.len() - 1;
        let z = &svd.v[last];
        let mut y = Vector::zeros(n);
        for (q, &c) in basis.iter().zip(z) {
            y.axpy(c, q);
        }
        let y = y.normalized().unwrap_or_else(|| basis[0].clone());
        (y, svd.singular_values[last])
    }

    /// Alternating minimization from `x0`; returns the final `x`.
    pub fn descend(&self, x0: Vector<T>, max_iters: usize) -> Vector<T> {
        let floor = T::epsilon() * T::lit(8.0);
        let mut x = x0;
        let (mut y, mut val) = self.partner(&x);
        let mut stalls = 0;
        for _ in 0..max_iters {
            let (x_new, _) = self.partner(&y);
            let (y_new, val_new) = self.partner(&x_new);
            x = x_new;
            y = y_new;
            let scale = self
                .family
                .images_unchecked(&x)
                .iter()
                .map(|p| p.norm())
                .fold(T::zero(), T::max);
            if val_new <= floor * scale.max(T::min_positive_value()) {
                break;
            }
            if val_new > val * (T::one() - T::lit(1e-4)) {
                stalls += 1;
                if stalls >= 8 {
                    break;
                }
            } else {
                stalls = 0;
            }
            val = val.min(val_new);
        }
        x
    }

    /// Random probes, then local searches from the best probes.
    ///
    /// Probe `i` draws from stream `(label/sample, i)` and restart `j` that
    /// cannot start from a probe draws from `(label/restart, j)`, so the
    /// outcome depends only on the seed. The local searches are skipped when
    /// a probe is already deficient.
    pub fn search(&self, opts: &SearchOptions<T>, label: &str) -> SearchOutcome<T> {
        let streams = Streams::new(opts.seed);
        let n = self.dim();
        let sample_name = format!("{label}/sample");
        let mut probes: Vec<Candidate<T>> = (0..opts.samples)
            .into_par_iter()
            .map(|i| {
                let x = unit_real(&mut streams.stream(&sample_name, i as u64), n);
                let ratio = self.ratio(&x);
                Candidate { x, ratio }
            })
            .collect();
        sort_ascending(&mut probes);
        let threshold = opts.tol.rank_tol;
        if probes.first().is_some_and(|c| c.ratio <= threshold) {
            return SearchOutcome {
                candidates: probes,
                samples_used: opts.samples,
                restarts_used: 0,
            };
        }
        let restart_name = format!("{label}/restart");
        let mut found: Vec<Candidate<T>> = (0..opts.restarts)
            .into_par_iter()
            .map(|j| {
                let start = match probes.get(j) {
                    Some(c) => c.x.clone(),
                    None => unit_real(&mut streams.stream(&restart_name, j as u64), n),
                };
                let x = self.descend(start, opts.max_iters);
                let ratio = self.ratio(&x);
                Candidate { x, ratio }
            })
            .collect();
        found.extend(probes);
        sort_ascending(&mut found);
        SearchOutcome {
            candidates: found,
            samples_used: opts.samples,
            restarts_used: opts.restarts,
        }
    }

    /// `x` with its components in the ranges of the nearly-annihilating
    /// projections removed exactly.
    ///
    /// Near a deficient probe the search can stall with `||P_i x||` and
    /// `||P_i y||` both tiny, where the witness measurements agree only to
    /// about the square root of the search residual. Projecting those
    /// ranges out makes `P_i x = 0` exactly for them. Returns `None` when
    /// no index qualifies or nothing of `x` survives.
    pub fn snapped(&self, x: &Vector<T>, tol: &Tolerance<T>) -> Option<Vector<T>> {
        let norms: Vec<T> = self.family.members().iter().map(|m| m.projection_norm(x)).collect();
        let top = norms.iter().copied().fold(T::zero(), T::max);
        let cut = tol.rank_tol.sqrt() * top;
        let ranges: Vec<Vector<T>> = self
            .family
            .members()
            .iter()
            .zip(&norms)
            .filter(|(_, &n)| n <= cut)
            .flat_map(|(m, _)| m.basis().iter().cloned())
            .collect();
        if ranges.is_empty() {
            return None;
        }
        let span = crate::geometry::orthonormalize(&ranges, tol).ok()?;
        let r = x - &span.project_unchecked(x);
        if r.norm() <= T::lit(0.5) * x.norm() {
            return None;
        }
        Some(r.scale_real(x.norm() / r.norm()))
    }

    /// Unit `y` orthogonal to `M(x)` (and to `x''` when paired), together
    /// with `dim M(x)`, if `M(x)` is deficient.
    ///
    /// Real case: the first left singular vector (in descending singular
    /// value order) whose value is below `rank_tol * sigma_1`. Paired case:
    /// among those vectors, the one with the largest component orthogonal to
    /// `x''`, with that component kept.
    pub fn orthogonal_direction(&self, x: &Vector<T>, tol: &Tolerance<T>) -> Option<(Vector<T>, usize)> {
        let svd = self.left_svd(x);
        let top = svd.singular_values[0];
        let thr = tol.rank_tol * top;
        let null: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&k| svd.singular_values[k] <= thr)
            .collect();
        let rank = self.dim() - null.len();
        let y = if self.paired {
            if null.len() < 2 {
                return None;
            }
            let j = companion_unchecked(x).normalized()?;
            let mut best: Option<(T, Vector<T>)> = None;
            for &k in &null {
                let v = Vector::from_vec(svd.v[k].clone());
                let mut r = v.clone();
                r.axpy(-v.dot(&j), &j);
                let rn = r.norm();
                if best.as_ref().is_none_or(|(b, _)| rn > *b) {
                    best = Some((rn, r));
                }
            }
            best?.1.normalized()?
        } else {
            let &k = null.first()?;
            Vector::from_vec(svd.v[k].clone())
        };
        Some((canonical_sign(y), rank))
    }
}

fn ratio_of<T: Real>(svd: &Svd<T>, target: usize) -> T {
    let top = svd.singular_values[0];
    if top == T::zero() {
        return T::zero();
    }
    svd.singular_values[target] / top
}

fn sort_ascending<T: Real>(c: &mut [Candidate<T>]) {
    c.sort_by(|a, b| a.ratio.partial_cmp(&b.ratio).unwrap_or(std::cmp::Ordering::Equal));
}

/// Flips `v` so that its largest-magnitude coordinate (lowest index on ties)
/// is positive.
pub(crate) fn canonical_sign<T: Real>(v: Vector<T>) -> Vector<T> {
    let mut best = 0;
    for (k, c) in v.coords().iter().enumerate() {
        if c.abs() > v[best].abs() {
            best = k;
        }
    }
    if v[best] < T::zero() {
        -&v
    } else {
        v
    }
}

/// Orthonormal basis of `u^perp` from the Householder reflector sending `u`
/// to a multiple of its largest coordinate axis.
pub(crate) fn complement_basis<T: Real>(u: &Vector<T>) -> Vec<Vector<T>> {
    let n = u.dim();
    let u = match u.normalized() {
        Some(u) => u,
        None => return (0..n).skip(1).map(|k| Vector::unit(n, k)).collect(),
    };
    let mut k = 0;
    for (i, c) in u.coords().iter().enumerate() {
        if c.abs() > u[k].abs() {
            k = i;
        }
    }
    let s = if u[k] < T::zero() { -T::one() } else { T::one() };
    let mut coords = u.into_coords();
    coords[k] += s;
    let v = Vector::from_vec(coords);
    let beta = T::lit(2.0) / v.norm_sq();
    (0..n)
        .filter(|&j| j != k)
        .map(|j| {
            let mut h = Vector::unit(n, j);
            h.axpy(-beta * v[j], &v);
            h
        })
        .collect()
}
