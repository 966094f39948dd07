use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use rank2lift::geometry::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank_tol: f64,
    pub ortho_tol: f64,
    pub eq_tol: f64,
}

impl From<&Tolerance<f64>> for Tolerances {
    fn from(t: &Tolerance<f64>) -> Self {
        Self {
            rank_tol: t.rank_tol,
            ortho_tol: t.ortho_tol,
            eq_tol: t.eq_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub samples: usize,
    pub restarts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Result of one command. Everything except `timing` is a function of the
/// input bytes, the seed, the budget and the tolerances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub command: String,
    /// `sha256:<hex>` of the raw input bytes.
    pub input_digest: Option<String>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub budget: Budget,
    /// `CERTIFIED_FAIL`, `PASS_EXHAUSTIVE`, `PASS_PROBABILISTIC`, `ERROR`, or
    /// null for purely descriptive commands.
    pub verdict: Option<String>,
    pub witnesses: Map<String, Value>,
    pub details: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing: Timing,
}

impl ReportFile {
    pub fn new(command: impl Into<String>, seed: u64, tol: &Tolerance<f64>, budget: Budget) -> Self {
        Self {
            command: command.into(),
            input_digest: None,
            seed,
            tolerances: tol.into(),
            budget,
            verdict: None,
            witnesses: Map::new(),
            details: Map::new(),
            error: None,
            timing: Timing { elapsed_ms: 0.0 },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with `timing` zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            timing: Timing { elapsed_ms: 0.0 },
            ..self.clone()
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}
