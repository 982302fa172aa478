//! Machine-readable run reports and benchmark records.

use serde::{Deserialize, Serialize};

use crate::graph::Ordering;
use crate::mc::{Constraint, McBound};
use crate::search::Halt;
use crate::solver::{DecideStats, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Optimal,
    Yes,
    No,
    Unknown,
    Error,
}

impl ReportStatus {
    /// Process exit code for a run ending in this status.
    pub fn exit_code(self) -> i32 {
        match self {
            ReportStatus::Optimal | ReportStatus::Yes => 0,
            ReportStatus::No => 1,
            ReportStatus::Unknown => 2,
            ReportStatus::Error => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub b: usize,
    pub ordering: Option<Ordering>,
    pub halt: Option<Halt>,
}

/// Output of the weight analysis. `grid_step` is absent when the weights
/// were given rather than searched.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    pub residuals: [f64; 4],
    pub binding: Vec<Constraint>,
    pub grid_step: Option<f64>,
    pub roots: [f64; 4],
}

impl AnalysisReport {
    pub fn new(bound: &McBound, grid_step: Option<f64>) -> Self {
        AnalysisReport {
            alpha: bound.weights.alpha,
            beta: bound.weights.beta,
            kappa: bound.kappa,
            residuals: bound.residuals,
            binding: bound.binding.clone(),
            grid_step,
            roots: bound.roots,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Solve(SolveResult),
    Decision(DecisionReport),
    Analysis(AnalysisReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The command line, space-joined.
    pub command: String,
    pub status: ReportStatus,
    pub input: Option<InputDigest>,
    pub result: Option<Payload>,
    pub elapsed_ms: f64,
    /// One block per decision call; present whenever a search ran.
    pub counters: Option<Vec<DecideStats>>,
    pub error: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// One benchmark instance, with its counters next to the ceilings they
/// must respect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub suite: String,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub leaves: usize,
    pub bandwidth: usize,
    pub status: String,
    pub oracle_bandwidth: Option<usize>,
    pub decide_calls: usize,
    /// Largest number of assignments generated by one decision call.
    pub assignments_generated: u64,
    pub assignment_ceiling: f64,
    /// Largest number of states visited by one run.
    pub states_visited: u64,
    /// `3^(n-L)·4^L`.
    pub ceiling: f64,
    /// Largest number of states visited by one decision call.
    pub states_per_call: u64,
    pub call_ceiling: f64,
    pub within_ceiling: bool,
    pub elapsed_ms: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{SolveStats, Status};

    #[test]
    fn exit_codes() {
        assert_eq!(ReportStatus::Yes.exit_code(), 0);
        assert_eq!(ReportStatus::No.exit_code(), 1);
        assert_eq!(ReportStatus::Unknown.exit_code(), 2);
        assert_eq!(ReportStatus::Error.exit_code(), 3);
    }

    #[test]
    fn solve_payload_shape() {
        let r = SolveResult {
            bandwidth: 1,
            lower_bound: 1,
            ordering: Ordering::from_positions(vec![2, 1, 3]).unwrap(),
            status: Status::Optimal,
            stats: SolveStats::default(),
        };
        let v: serde_json::Value = serde_json::to_value(Payload::Solve(r)).unwrap();
        assert_eq!(v["kind"], "solve");
        assert_eq!(v["ordering"], serde_json::json!([2, 1, 3]));
        assert_eq!(v["status"], "optimal");
    }

    #[test]
    fn bad_ordering_rejected_on_parse() {
        let text = r#"{"b":1,"ordering":[1,1],"halt":null}"#;
        assert!(serde_json::from_str::<DecisionReport>(text).is_err());
    }
}
