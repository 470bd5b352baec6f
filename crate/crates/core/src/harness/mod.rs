//! Verification suites producing machine-readable reports.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod instances;
mod suites;

pub use suites::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown subcommand `{0}`")]
    UnknownSubcommand(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
}

impl HarnessError {
    pub fn invalid(name: &str, reason: impl fmt::Display) -> Self {
        HarnessError::InvalidParameter {
            name: name.to_string(),
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(suite: &str) -> Self {
        RunReport {
            suite: suite.to_string(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
            seed: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self.param("seed", seed)
    }

    pub fn check(&mut self, description: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, pass: bool) {
        self.checks.push(Check {
            description: description.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    /// A check comparing two displayable values for equality.
    pub fn check_eq<T: fmt::Display + PartialEq>(&mut self, description: impl Into<String>, expected: T, actual: T) {
        let pass = expected == actual;
        self.check(description, expected, actual, pass);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Concatenates reports, prefixing each check with its suite name.
    pub fn merge(suite: &str, reports: Vec<RunReport>) -> Self {
        let mut out = RunReport::new(suite);
        for r in reports {
            out.elapsed_ms += r.elapsed_ms;
            if out.seed.is_none() {
                out.seed = r.seed;
            }
            for (k, v) in r.parameters {
                out.parameters.insert(format!("{}.{k}", r.suite), v);
            }
            for c in r.checks {
                out.checks.push(Check {
                    description: format!("{}: {}", r.suite, c.description),
                    ..c
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite: {}", self.suite);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "[{tag}] {}: expected {}, got {}", c.description, c.expected, c.actual);
        }
        let _ = writeln!(
            s,
            "{}/{} checks passed in {} ms",
            self.passed(),
            self.checks.len(),
            self.elapsed_ms
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = RunReport::new("demo").with_seed(7).param("range", 3);
        r.check_eq("one equals one", 1, 1);
        r.check("two", "x", "y", false);
        r.elapsed_ms = 12;
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.pass());
        assert_eq!(r.passed(), 1);
    }

    #[test]
    fn merge_prefixes_suites() {
        let mut a = RunReport::new("a").param("k", 1);
        a.check_eq("c", 1, 1);
        let m = RunReport::merge("all", vec![a]);
        assert_eq!(m.checks[0].description, "a: c");
        assert_eq!(m.parameters["a.k"], "1");
        assert!(m.to_text().contains("1/1 checks passed"));
    }
}
