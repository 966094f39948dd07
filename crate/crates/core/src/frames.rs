//! Frame and fusion-frame bounds, harmonic Parseval frames, and the lifts of
//! complex frames and fusion frames to fusion frames of `R^{2n}`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{common_dim, symmetric_extremes, tolerant_rank, Matrix, Subspace, Tolerance, Vector};
use crate::realify::{lift_subspace, rank2};
use crate::scalar::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FrameFlags {
    /// The vectors span, i.e. the lower bound is positive.
    pub is_frame: bool,
    pub tight: bool,
    pub parseval: bool,
    pub equal_norm: bool,
    pub unit_norm: bool,
}

/// Finite family of vectors with its optimal frame bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<S: Field> {
    vectors: Vec<Vector<S>>,
    lower: S::Real,
    upper: S::Real,
    flags: FrameFlags,
}

/// `sum_i v_i v_i^*`.
pub fn frame_operator<S: Field>(vectors: &[Vector<S>]) -> Result<Matrix<S>> {
    let n = common_dim(vectors)?;
    let mut m = Matrix::zeros(n, n);
    for v in vectors {
        m.add_outer(S::Real::one(), v);
    }
    Ok(m)
}

/// Optimal bounds `(A, B)`: the extreme eigenvalues of the frame operator.
///
/// `A` is reported as exactly 0 when the vectors do not span.
pub fn frame_bounds<S: Field>(vectors: &[Vector<S>], tol: &Tolerance<S::Real>) -> Result<(S::Real, S::Real)> {
    let n = common_dim(vectors)?;
    let (lo, hi) = symmetric_extremes(&frame_operator(vectors)?, tol)?;
    let spans = tolerant_rank(vectors, tol)? == n;
    Ok((
        if spans {
            lo.max(S::Real::zero())
        } else {
            S::Real::zero()
        },
        hi,
    ))
}

impl<S: Field> Frame<S> {
    pub fn new(vectors: Vec<Vector<S>>, tol: &Tolerance<S::Real>) -> Result<Self> {
        let (lower, upper) = frame_bounds(&vectors, tol)?;
        let one = S::Real::one();
        let norms: Vec<S::Real> = vectors.iter().map(|v| v.norm()).collect();
        let is_frame = lower > S::Real::zero();
        let tight = is_frame && (upper - lower).abs() <= tol.eq_tol * upper;
        let flags = FrameFlags {
            is_frame,
            tight,
            parseval: tight && (lower - one).abs() <= tol.eq_tol && (upper - one).abs() <= tol.eq_tol,
            equal_norm: norms.iter().all(|&n| (n - norms[0]).abs() <= tol.eq_tol),
            unit_norm: norms.iter().all(|&n| (n - one).abs() <= tol.eq_tol),
        };
        Ok(Self {
            vectors,
            lower,
            upper,
            flags,
        })
    }

    pub fn vectors(&self) -> &[Vector<S>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn bounds(&self) -> (S::Real, S::Real) {
        (self.lower, self.upper)
    }

    pub fn flags(&self) -> FrameFlags {
        self.flags
    }

    /// The same family with every vector scaled to unit norm.
    pub fn normalized(&self, tol: &Tolerance<S::Real>) -> Result<Self> {
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| v.normalized().ok_or(Error::ZeroVector(i)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors, tol)
    }
}

/// Equal-norm Parseval frame of `m` vectors in `C^n`: the first `n`
/// columns of the unitary `m x m` DFT matrix, read by rows.
pub fn harmonic_parseval<T: Real>(m: usize, n: usize, tol: &Tolerance<T>) -> Result<Frame<Complex<T>>> {
    if n == 0 || m < n {
        return Err(Error::InvalidParameter(format!(
            "harmonic frame needs m >= n >= 1 (got m = {m}, n = {n})"
        )));
    }
    let scale = T::from_usize_lossy(m).sqrt().recip();
    let step = T::TAU() / T::from_usize_lossy(m);
    let vectors = (0..m)
        .map(|j| {
            Vector::from_vec(
                (0..n)
                    .map(|k| {
                        let theta = step * T::from_usize_lossy((j * k) % m);
                        Complex::new(theta.cos() * scale, theta.sin() * scale)
                    })
                    .collect(),
            )
        })
        .collect();
    Frame::new(vectors, tol)
}

/// Weighted family of subspaces with bounds of `sum_i a_i^2 P_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionFrame<S: Field> {
    subspaces: Vec<Subspace<S>>,
    weights: Vec<S::Real>,
    lower: S::Real,
    upper: S::Real,
}

/// `sum_i a_i^2 P_i` as a dense matrix.
pub fn fusion_operator<S: Field>(subspaces: &[Subspace<S>], weights: &[S::Real]) -> Result<Matrix<S>> {
    let n = validate_fusion(subspaces, weights)?;
    let mut m = Matrix::zeros(n, n);
    for (s, &a) in subspaces.iter().zip(weights) {
        for b in s.basis() {
            m.add_outer(a * a, b);
        }
    }
    Ok(m)
}

fn validate_fusion<S: Field>(subspaces: &[Subspace<S>], weights: &[S::Real]) -> Result<usize> {
    let n = subspaces.first().ok_or(Error::EmptyInput)?.ambient_dim();
    if weights.len() != subspaces.len() {
        return Err(Error::DimensionMismatch {
            expected: subspaces.len(),
            found: weights.len(),
        });
    }
    for s in subspaces {
        if s.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.ambient_dim(),
            });
        }
    }
    for (index, &w) in weights.iter().enumerate() {
        if !(w.is_finite() && w > S::Real::zero()) {
            return Err(Error::NonPositiveWeight {
                index,
                weight: w.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(n)
}

/// Extreme eigenvalues of `sum_i a_i^2 P_i`; `A` is exactly 0 when the
/// subspaces do not span.
pub fn fusion_bounds<S: Field>(
    subspaces: &[Subspace<S>],
    weights: &[S::Real],
    tol: &Tolerance<S::Real>,
) -> Result<(S::Real, S::Real)> {
    let op = fusion_operator(subspaces, weights)?;
    let n = op.rows();
    let (lo, hi) = symmetric_extremes(&op, tol)?;
    let all: Vec<Vector<S>> = subspaces.iter().flat_map(|s| s.basis().iter().cloned()).collect();
    let spans = !all.is_empty() && tolerant_rank(&all, tol)? == n;
    Ok((
        if spans {
            lo.max(S::Real::zero())
        } else {
            S::Real::zero()
        },
        hi,
    ))
}

impl<S: Field> FusionFrame<S> {
    pub fn new(subspaces: Vec<Subspace<S>>, weights: Vec<S::Real>, tol: &Tolerance<S::Real>) -> Result<Self> {
        let (lower, upper) = fusion_bounds(&subspaces, &weights, tol)?;
        Ok(Self {
            subspaces,
            weights,
            lower,
            upper,
        })
    }

    pub fn subspaces(&self) -> &[Subspace<S>] {
        &self.subspaces
    }

    pub fn weights(&self) -> &[S::Real] {
        &self.weights
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspaces[0].ambient_dim()
    }

    pub fn bounds(&self) -> (S::Real, S::Real) {
        (self.lower, self.upper)
    }

    /// `B - A`.
    pub fn gap(&self) -> S::Real {
        self.upper - self.lower
    }

    pub fn is_fusion_frame(&self) -> bool {
        self.lower > S::Real::zero()
    }

    pub fn is_tight(&self, tol: &Tolerance<S::Real>) -> bool {
        self.is_fusion_frame() && self.gap() <= tol.eq_tol * self.upper
    }
}

/// `{(S_{v_i}, ||v_i||)}`: the fusion frame of planes in `R^{2n}` with the
/// same bounds as the complex frame `{v_i}`.
pub fn lift_frame_to_fusion<T: Real>(frame: &Frame<Complex<T>>, tol: &Tolerance<T>) -> Result<FusionFrame<T>> {
    let mut subspaces = Vec::with_capacity(frame.len());
    let mut weights = Vec::with_capacity(frame.len());
    for (i, v) in frame.vectors().iter().enumerate() {
        let p = rank2(v, tol).map_err(|_| Error::ZeroVector(i))?;
        subspaces.push(p.into_subspace());
        weights.push(v.norm());
    }
    FusionFrame::new(subspaces, weights, tol)
}

/// Lifts each `W_i` of a complex fusion frame to `V_i` of `R^{2n}`,
/// keeping the weights.
pub fn lift_fusion_to_fusion<T: Real>(ff: &FusionFrame<Complex<T>>, tol: &Tolerance<T>) -> Result<FusionFrame<T>> {
    let subspaces = ff
        .subspaces()
        .iter()
        .map(|w| lift_subspace(w, tol).map(|l| l.into_real()))
        .collect::<Result<Vec<_>>>()?;
    FusionFrame::new(subspaces, ff.weights().to_vec(), tol)
}

/// Tight fusion frame of `m` planes in `R^{2n}`, from the harmonic frame.
pub fn tight_fusion_existence<T: Real>(m: usize, n: usize, tol: &Tolerance<T>) -> Result<FusionFrame<T>> {
    let ff = lift_frame_to_fusion(&harmonic_parseval(m, n, tol)?, tol)?;
    if !ff.is_tight(tol) {
        let (a, b) = ff.bounds();
        return Err(Error::NotTight {
            lower: a.to_f64().unwrap_or(f64::NAN),
            upper: b.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(ff)
}
