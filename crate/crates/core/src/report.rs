//! Machine-readable verification reports: deterministic JSON with exact
//! rational values serialized as "p/r" strings, plus a plain-text rendering.
//!
//! Determinism contract: two runs with the same configuration produce
//! byte-identical JSON.  Maps are ordered, struct fields serialize in
//! declaration order, and timings are omitted unless explicitly requested.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verification record: which suite, at which parameters, with what
/// outcome.  `witness` carries a failure description; `values` carries
/// exact scalars worth reporting (eigenvalues, ranks) as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, String>>,
}

impl Check {
    pub fn pass(suite: &str, params: BTreeMap<String, String>) -> Self {
        Check {
            suite: suite.into(),
            params,
            status: Status::Pass,
            witness: None,
            time_ms: None,
            values: None,
        }
    }

    pub fn fail(suite: &str, params: BTreeMap<String, String>, witness: String) -> Self {
        Check {
            suite: suite.into(),
            params,
            status: Status::Fail,
            witness: Some(witness),
            time_ms: None,
            values: None,
        }
    }

    pub fn with_values(mut self, values: BTreeMap<String, String>) -> Self {
        self.values = Some(values);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report<C: Serialize> {
    pub version: u32,
    pub config: C,
    pub checks: Vec<Check>,
}

impl<C: Serialize> Report<C> {
    pub fn new(config: C, checks: Vec<Check>) -> Self {
        Report {
            version: REPORT_VERSION,
            config,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut failed = 0usize;
        for check in &self.checks {
            let status = match check.status {
                Status::Pass => "PASS",
                Status::Fail => {
                    failed += 1;
                    "FAIL"
                }
            };
            let params = check
                .params
                .iter()
                .map(|(k, v)| format!("{}={}", k, v))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = write!(out, "{} {} {}", status, check.suite, params);
            if let Some(values) = &check.values {
                let vals = values
                    .iter()
                    .map(|(k, v)| format!("{}={}", k, v))
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = write!(out, " [{}]", vals);
            }
            if let Some(ms) = check.time_ms {
                let _ = write!(out, " ({} ms)", ms);
            }
            if let Some(witness) = &check.witness {
                let _ = write!(out, "\n    {}", witness);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed",
            self.checks.len(),
            failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_omits_empty_fields_and_is_stable() {
        let report = Report::new(
            BTreeMap::from([("n".to_string(), "2".to_string())]),
            vec![Check::pass("rmatrix", BTreeMap::new())],
        );
        let a = report.to_json();
        let b = report.to_json();
        assert_eq!(a, b);
        assert!(!a.contains("witness"));
        assert!(!a.contains("time_ms"));
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn text_rendering_counts_failures() {
        let report = Report::new(
            (),
            vec![
                Check::pass("rmatrix", BTreeMap::new()),
                Check::fail("hecke", BTreeMap::new(), "broken".into()),
            ],
        );
        assert!(!report.all_passed());
        let text = report.to_text();
        assert!(text.contains("PASS rmatrix"));
        assert!(text.contains("FAIL hecke"));
        assert!(text.contains("broken"));
        assert!(text.contains("2 checks, 1 failed"));
    }
}
