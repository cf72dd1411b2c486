//! Pass/fail reporting for the verification suites.

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A named suite of checks; the overall status is pass exactly when every
/// check passes.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            checks: Vec::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn check(&mut self, id: &str, description: &str, ok: bool, witness: Option<String>) {
        self.checks.push(Check {
            id: id.to_owned(),
            description: description.to_owned(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            witness: if ok { None } else { witness },
        });
    }

    pub fn pass(&mut self, id: &str, description: &str) {
        self.check(id, description, true, None);
    }

    pub fn fail(&mut self, id: &str, description: &str, witness: String) {
        self.check(id, description, false, Some(witness));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn finish(mut self) -> Self {
        if let Some(start) = self.started.take() {
            self.elapsed_ms = start.elapsed().as_millis();
        }
        self
    }

    /// Human-readable rendering, one line per check.
    pub fn render(&self) -> String {
        let mut out = format!(
            "suite {}: {}/{} checks passed ({} ms)\n",
            self.suite,
            self.checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count(),
            self.checks.len(),
            self.elapsed_ms
        );
        for check in &self.checks {
            let tag = match check.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!("  [{tag}] {:<28} {}", check.id, check.description));
            if let Some(w) = &check.witness {
                out.push_str(&format!(" (witness: {w})"));
            }
            out.push('\n');
        }
        out
    }
}
