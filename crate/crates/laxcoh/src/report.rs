//! Machine-readable verification reports.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check: an id, the relation it verifies, sample count and at most a
/// few counterexamples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub relation: String,
    pub status: Status,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Value>,
}

/// Counterexamples kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 5;

impl CheckEntry {
    pub fn new(id: &str, relation: &str) -> Self {
        CheckEntry {
            id: id.into(),
            relation: relation.into(),
            status: Status::Pass,
            samples: 0,
            witness: None,
            counterexamples: Vec::new(),
        }
    }

    /// Records one sample.
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.samples += 1;
        if !ok {
            self.status = Status::Fail;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(counterexample());
            }
        }
    }

    pub fn fail(&mut self, detail: Value) {
        self.status = Status::Fail;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(detail);
        }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Evaluates `f` on every sample in parallel and records the outcomes in
/// sample order; an error counts as a failure.
pub fn run_samples<T: Sync + Send + Copy + Serialize>(
    id: &str,
    relation: &str,
    samples: Vec<T>,
    f: impl Fn(T) -> Result<bool> + Sync,
) -> CheckEntry {
    let results: Vec<(T, Result<bool>)> = samples.par_iter().map(|&s| (s, f(s))).collect();
    let mut entry = CheckEntry::new(id, relation);
    for (s, r) in results {
        match r {
            Ok(ok) => entry.record(ok, || json!({ "sample": s })),
            Err(e) => entry.record(false, || json!({ "sample": s, "error": e.to_string() })),
        }
    }
    entry
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub config: Value,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(suite: &str, config: Value, mut checks: Vec<CheckEntry>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            suite: suite.into(),
            config,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckEntry::passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_sorted_and_status() {
        let mut a = CheckEntry::new("b", "x");
        a.record(true, || Value::Null);
        let mut b = CheckEntry::new("a", "y");
        b.record(false, || Value::from(1));
        let r = Report::new("t", Value::Null, vec![a, b]);
        assert_eq!(r.checks[0].id, "a");
        assert!(!r.passed());
        assert_eq!(r.checks[0].counterexamples.len(), 1);
    }
}
