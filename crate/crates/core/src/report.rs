//! Structured pass/fail records shared by all checks.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub data: Value,
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: true, data: Value::Null, witnesses: Vec::new() }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    /// Records a failure; only the first few witnesses are kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.passed = false;
        if self.witnesses.len() < 8 {
            self.witnesses.push(witness.into());
        }
    }

    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
