use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::params::Params;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub description: String,
    pub witnesses: Value,
}

/// Outcome of one suite over one grid cell. Everything except `elapsed_ms`
/// is a function of `(suite, parameters, seed, trials)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: Params,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One line for terminal output.
    pub fn summary(&self) -> String {
        let p = &self.parameters;
        let mut cell = format!("{:?} n={} m={}", p.kind, p.n, p.m).to_lowercase();
        if let Some(s) = p.s {
            cell.push_str(&format!(" s={s}"));
        }
        if let Some(v) = p.variant {
            cell.push_str(&format!(" variant={v}"));
        }
        format!(
            "{} [{}] {} {}/{} passed in {} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            cell,
            self.passes,
            self.trials,
            self.elapsed_ms
        )
    }

    /// The report with the timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> SuiteReport {
        SuiteReport { elapsed_ms: 0, ..self.clone() }
    }
}
