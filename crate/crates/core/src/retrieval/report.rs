use std::fmt;

use crate::geometry::{Tolerance, Vector};
use crate::scalar::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// A witness was found and re-verified by an independent formula.
    CertifiedFail,
    /// Every case of a finite condition was checked.
    PassExhaustive,
    /// No counterexample was found by the randomized search.
    PassProbabilistic,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        !matches!(self, Verdict::CertifiedFail)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedFail => "CERTIFIED_FAIL",
            Verdict::PassExhaustive => "PASS_EXHAUSTIVE",
            Verdict::PassProbabilistic => "PASS_PROBABILISTIC",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Search budget and seed for the randomized checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions<T> {
    pub tol: Tolerance<T>,
    /// Random unit probes evaluated before any local search.
    pub samples: usize,
    /// Local searches started from the best probes.
    pub restarts: usize,
    /// Iteration cap of one local search.
    pub max_iters: usize,
    pub seed: u64,
}

impl<T: Real> Default for SearchOptions<T> {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            samples: 64,
            restarts: 16,
            max_iters: 500,
            seed: 0,
        }
    }
}

impl<T: Real> SearchOptions<T> {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: Tolerance<T>) -> Self {
        self.tol = tol;
        self
    }
}

/// Outcome of a retrieval check.
///
/// For failures the report carries everything needed to re-check the claim:
/// the probe `x` at which `M = span{P_i x}` is deficient, a unit vector of
/// `M^perp`, and the two indistinguishable vectors built from them.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<S: Field> {
    pub verdict: Verdict,
    pub witness_x: Option<Vector<S>>,
    pub witness_y: Option<Vector<S>>,
    /// Probe `x` (the lift `x'` for complex families).
    pub probe_x: Option<Vector<S::Real>>,
    /// Unit vector of `M^perp` used to build the witness pair.
    pub probe_y: Option<Vector<S::Real>>,
    pub deficient_span_dim: Option<usize>,
    /// 0-based index set `I` of a violated bipartition.
    pub violating_subset: Option<Vec<usize>>,
    pub samples_used: usize,
    pub restarts_used: usize,
    /// Smallest relative singular value reached (phase retrieval) or largest
    /// normalized distance `dist(x, M) / ||x||` reached (norm retrieval).
    pub residual: S::Real,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl<S: Field> CheckReport<S> {
    pub(crate) fn pass(verdict: Verdict) -> Self {
        Self {
            verdict,
            witness_x: None,
            witness_y: None,
            probe_x: None,
            probe_y: None,
            deficient_span_dim: None,
            violating_subset: None,
            samples_used: 0,
            restarts_used: 0,
            residual: S::Real::zero(),
            seed: None,
            notes: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn witness_pair(&self) -> Option<(&Vector<S>, &Vector<S>)> {
        self.witness_x.as_ref().zip(self.witness_y.as_ref())
    }
}
