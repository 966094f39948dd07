//! Complex vectors in `C^n` as rank-2 projections in `R^{2n}`.
//!
//! For `v = (a_1 + i b_1, ..., a_n + i b_n)` the lift is the interleaved pair
//!
//! ```text
//! v'  = ( a_1, b_1, ...,  a_n, b_n)
//! v'' = (-b_1, a_1, ..., -b_n, a_n)      (= (iv)')
//! ```
//!
//! and `S_v = span{v', v''}` with orthogonal projection `P_v`. Only the
//! interleaved layout exists; there is no block (all-real-then-all-imaginary)
//! variant.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{gram_deviation, tolerant_rank, Matrix, Subspace, Tolerance, Vector};
use crate::scalar::prelude::*;

/// The two real vectors attached to a complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedVectorPair<T: Real> {
    v_prime: Vector<T>,
    v_dprime: Vector<T>,
    source: Vector<Complex<T>>,
}

impl<T: Real> LiftedVectorPair<T> {
    pub fn v_prime(&self) -> &Vector<T> {
        &self.v_prime
    }
    pub fn v_dprime(&self) -> &Vector<T> {
        &self.v_dprime
    }
    pub fn source(&self) -> &Vector<Complex<T>> {
        &self.source
    }
}

/// Projection of `R^{2n}` onto `S_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoProjection<T: Real> {
    subspace: Subspace<T>,
    source: Vector<Complex<T>>,
}

impl<T: Real> RankTwoProjection<T> {
    pub fn subspace(&self) -> &Subspace<T> {
        &self.subspace
    }
    pub fn source(&self) -> &Vector<Complex<T>> {
        &self.source
    }
    pub fn into_subspace(self) -> Subspace<T> {
        self.subspace
    }
    /// Dense `2n x 2n` matrix, for trace computations and display.
    pub fn matrix(&self) -> Matrix<T> {
        self.subspace.projection_matrix()
    }
    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.subspace.project(x)
    }
}

/// A complex subspace together with its `2d`-dimensional real counterpart.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSubspace<T: Real> {
    complex_source: Subspace<Complex<T>>,
    real_lift: Subspace<T>,
}

impl<T: Real> LiftedSubspace<T> {
    pub fn complex_source(&self) -> &Subspace<Complex<T>> {
        &self.complex_source
    }
    pub fn real_lift(&self) -> &Subspace<T> {
        &self.real_lift
    }
    pub fn into_real(self) -> Subspace<T> {
        self.real_lift
    }
}

/// `v -> (v', v'')`.
pub fn lift<T: Real>(v: &Vector<Complex<T>>) -> LiftedVectorPair<T> {
    let mut p = Vec::with_capacity(2 * v.dim());
    let mut d = Vec::with_capacity(2 * v.dim());
    for c in v.coords() {
        p.push(c.re);
        p.push(c.im);
        d.push(-c.im);
        d.push(c.re);
    }
    LiftedVectorPair {
        v_prime: Vector::from_vec(p),
        v_dprime: Vector::from_vec(d),
        source: v.clone(),
    }
}

/// `v'` alone.
pub fn lift_prime<T: Real>(v: &Vector<Complex<T>>) -> Vector<T> {
    Vector::from_vec(v.coords().iter().flat_map(|c| [c.re, c.im]).collect())
}

/// Inverse of `v -> v'`: pairs consecutive coordinates into complex numbers.
pub fn unlift<T: Real>(z: &Vector<T>) -> Result<Vector<Complex<T>>> {
    if !z.dim().is_multiple_of(2) {
        return Err(Error::OddDimension(z.dim()));
    }
    Ok(Vector::from_vec(
        z.coords().chunks_exact(2).map(|p| Complex::new(p[0], p[1])).collect(),
    ))
}

/// `z' -> z''`, i.e. multiplication by `i` in real coordinates.
pub fn companion<T: Real>(z: &Vector<T>) -> Result<Vector<T>> {
    if !z.dim().is_multiple_of(2) {
        return Err(Error::OddDimension(z.dim()));
    }
    Ok(companion_unchecked(z))
}

pub(crate) fn companion_unchecked<T: Real>(z: &Vector<T>) -> Vector<T> {
    Vector::from_vec(z.coords().chunks_exact(2).flat_map(|p| [-p[1], p[0]]).collect())
}

/// `<w, v>` computed as `<w', v'> + i <w', v''>`.
pub fn hermitian_pairing_via_lift<T: Real>(w: &Vector<Complex<T>>, v: &Vector<Complex<T>>) -> Result<Complex<T>> {
    v.check_dim(w.dim())?;
    let lw = lift(w);
    let lv = lift(v);
    Ok(Complex::new(lw.v_prime.dot(&lv.v_prime), lw.v_prime.dot(&lv.v_dprime)))
}

/// `P_v`, with basis `{v'/||v||, v''/||v||}`.
pub fn rank2<T: Real>(v: &Vector<Complex<T>>, tol: &Tolerance<T>) -> Result<RankTwoProjection<T>> {
    let norm = v.norm();
    if norm <= tol.eq_tol {
        return Err(Error::ZeroVector(0));
    }
    let l = lift(v);
    let inv = norm.recip();
    let basis = vec![l.v_prime.scale_real(inv), l.v_dprime.scale_real(inv)];
    Ok(RankTwoProjection {
        subspace: Subspace::from_parts_unchecked(2 * v.dim(), basis),
        source: v.clone(),
    })
}

/// `cos(theta) w' + sin(theta) w''`, the lift of `e^{i theta} w`.
pub fn rotate_lift<T: Real>(w: &Vector<Complex<T>>, theta: T) -> Vector<T> {
    let l = lift(w);
    let mut out = l.v_prime.scale_real(theta.cos());
    out.axpy(theta.sin(), &l.v_dprime);
    out
}

/// The scalar `c` with `v = c w`, if `S_v = S_w`.
///
/// `S_v = S_w` is decided by the tolerant rank of `{v', v'', w', w''}`.
pub fn scalar_between<T: Real>(
    v: &Vector<Complex<T>>,
    w: &Vector<Complex<T>>,
    tol: &Tolerance<T>,
) -> Result<Option<Complex<T>>> {
    w.check_dim(v.dim())?;
    let (nv, nw) = (v.norm(), w.norm());
    if nv <= tol.eq_tol {
        return Err(Error::ZeroVector(0));
    }
    if nw <= tol.eq_tol {
        return Err(Error::ZeroVector(1));
    }
    let lv = lift(v);
    let lw = lift(w);
    let gens = [
        lv.v_prime.scale_real(nv.recip()),
        lv.v_dprime.scale_real(nv.recip()),
        lw.v_prime.scale_real(nw.recip()),
        lw.v_dprime.scale_real(nw.recip()),
    ];
    if tolerant_rank(&gens, tol)? != 2 {
        return Ok(None);
    }
    let c = v.inner(w).scale(nw.powi(2).recip());
    let mut r = v.clone();
    r.axpy(-c, w);
    if r.norm() > tol.rank_tol * nv {
        return Ok(None);
    }
    Ok(Some(c))
}

/// `W subset C^n` (orthonormal basis `b_i`) to `V = span{b_i', b_i''}`.
pub fn lift_subspace<T: Real>(w: &Subspace<Complex<T>>, tol: &Tolerance<T>) -> Result<LiftedSubspace<T>> {
    let dev = gram_deviation(w.basis());
    if dev > tol.ortho_tol {
        return Err(Error::NotOrthonormal {
            deviation: dev.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    let basis: Vec<Vector<T>> = w
        .basis()
        .iter()
        .flat_map(|b| {
            let l = lift(b);
            [l.v_prime, l.v_dprime]
        })
        .collect();
    Ok(LiftedSubspace {
        complex_source: w.clone(),
        real_lift: Subspace::from_parts_unchecked(2 * w.ambient_dim(), basis),
    })
}

/// `tr(PQ)` as `sum_{i,j} <p_i, q_j>^2` over the two orthonormal bases.
pub fn trace_pairing<T: Real>(p: &RankTwoProjection<T>, q: &RankTwoProjection<T>) -> Result<T> {
    subspace_trace_pairing(&p.subspace, &q.subspace)
}

/// Hilbert–Schmidt pairing `tr(P_A P_B)` of two subspace projections.
pub fn subspace_trace_pairing<S: Field>(a: &Subspace<S>, b: &Subspace<S>) -> Result<S::Real> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(a.basis()
        .iter()
        .flat_map(|p| b.basis().iter().map(move |q| p.inner(q).modulus_sq()))
        .sum())
}
