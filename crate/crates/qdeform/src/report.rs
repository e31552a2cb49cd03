//! Machine-readable pass/fail reports shared by all verification suites.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

/// Outcome of a single named check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// On failure, a witness for the discrepancy (an offending entry,
    /// triple, or residual). Empty on success.
    pub witness: String,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: String::new(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        let mut witness = witness.into();
        if witness.is_empty() {
            witness = "failed".into();
        }
        Check {
            name: name.into(),
            status: Status::Fail,
            witness,
        }
    }

    /// Build from a boolean with a lazily rendered witness.
    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Report for one suite: named checks plus wall-clock time.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    /// Run a suite body, timing it.
    pub fn run(suite: impl Into<String>, body: impl FnOnce() -> Vec<Check>) -> Self {
        let start = Instant::now();
        let checks = body();
        VerifyReport {
            suite: suite.into(),
            checks,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} [{}] ({} ms)",
            self.suite,
            if self.all_passed() { "pass" } else { "FAIL" },
            self.elapsed_ms
        )?;
        for c in &self.checks {
            match c.status {
                Status::Pass => writeln!(f, "  pass  {}", c.name)?,
                Status::Fail => writeln!(f, "  FAIL  {}  witness: {}", c.name, c.witness)?,
            }
        }
        Ok(())
    }
}
