use serde::{Deserialize, Serialize};

/// Outcome of one randomized check or witness search.
///
/// `passed + failed` equals the number of evaluations performed.
/// `worst_margin` is the largest deviation observed across all evaluations
/// (for passing runs this is numerical noise; for failing runs it measures
/// the strongest violation). `witness` holds serialized inputs when a trial
/// failed, or when a witness search found what it was looking for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub passed: u64,
    pub failed: u64,
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn new(check_id: impl Into<String>) -> Self {
        CheckReport {
            check_id: check_id.into(),
            passed: 0,
            failed: 0,
            worst_margin: 0.0,
            witness: None,
        }
    }

    /// Record one evaluation: its deviation, whether it passed, and the
    /// inputs to keep if it is the first failure.
    pub fn record(&mut self, ok: bool, deviation: f64, witness: impl FnOnce() -> serde_json::Value) {
        if deviation > self.worst_margin {
            self.worst_margin = deviation;
        }
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}
