//! Machine-readable command reports.
//!
//! Field order is fixed by the struct declarations and every collection is
//! sorted, so a command with a fixed seed serializes to identical bytes on
//! every run. `timing_ms` stays null in serialized output for the same
//! reason; measured wall time goes to stderr and the table format instead.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    pub results: Results,
    pub oracle_verdict: Option<String>,
    pub post_selection_probability: Option<f64>,
    pub timing_ms: Option<f64>,
}

#[derive(Serialize, Debug, Default)]
pub struct ConfigEcho {
    pub bits: Option<u32>,
    pub value: Option<u64>,
    pub mode: Option<String>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub backend: Option<String>,
    pub format: String,
}

#[derive(Serialize, Debug)]
#[serde(untagged)]
pub enum Results {
    Unadd(UnaddResults),
    Unmul(UnmulResults),
    Verify(VerifyResults),
    Bench(BenchResults),
}

/// Triples sorted by (a, b, c_in); exactly one of `probabilities` and
/// `counts` is set, aligned with `triples`.
#[derive(Serialize, Debug)]
pub struct UnaddResults {
    pub triples: Vec<[u64; 3]>,
    pub probabilities: Option<Vec<f64>>,
    pub counts: Option<Vec<u64>>,
    pub cardinality: u64,
    pub expected_cardinality: u64,
}

/// Accepted pairs sorted by (x, y); weight vectors as in [`UnaddResults`].
/// Rejection maps always carry all three predicate keys.
#[derive(Serialize, Debug)]
pub struct UnmulResults {
    pub pairs: Vec<[u64; 2]>,
    pub probabilities: Option<Vec<f64>>,
    pub counts: Option<Vec<u64>>,
    pub cardinality: u64,
    pub rejection_probabilities: Option<BTreeMap<String, f64>>,
    pub rejection_counts: Option<BTreeMap<String, u64>>,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub name: String,
    pub status: String,
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: &str, pass: bool, detail: String) -> Self {
        CheckReport {
            name: name.to_string(),
            status: if pass { "pass" } else { "fail" }.to_string(),
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Serialize, Debug)]
pub struct VerifyResults {
    pub checks: Vec<CheckReport>,
}

#[derive(Serialize, Debug)]
pub struct BenchRun {
    pub n_bits: u32,
    pub backend: String,
    pub wall_ms: f64,
    /// Process peak resident set size when the run finished, from
    /// /proc/self/status; null where unavailable.
    pub peak_rss_kb: Option<u64>,
    pub support_size: u64,
}

#[derive(Serialize, Debug)]
pub struct BenchResults {
    pub runs: Vec<BenchRun>,
}
