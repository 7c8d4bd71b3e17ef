//! Report schema: per-check records plus the configuration that produced
//! them. Rationals are serialized as exact `p/q` strings; nothing in a
//! report is ever a float.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub kind: String,
    pub n: usize,
    /// The mathematical identity being checked, human readable.
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub got: String,
    pub millis: u128,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(config: RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        // Deterministic order regardless of scheduling.
        checks.sort_by(|a, b| {
            (a.kind.as_str(), a.n, a.id.as_str()).cmp(&(b.kind.as_str(), b.n, b.id.as_str()))
        });
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    #[cfg(test)]
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Plain-text rendering: one line per check, a summary, and the total
    /// wall time in a trailing field (the only part allowed to vary between
    /// identical runs).
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let mut pass = 0usize;
        let mut fail = 0usize;
        let mut skipped = 0usize;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => {
                    pass += 1;
                    "pass"
                }
                Status::Fail => {
                    fail += 1;
                    "FAIL"
                }
                Status::Skipped => {
                    skipped += 1;
                    "skip"
                }
            };
            let _ = writeln!(
                out,
                "[{tag}] {}({}) {}: {}",
                c.kind, c.n, c.id, c.anchor
            );
            if c.status == Status::Fail {
                let _ = writeln!(out, "       expected {} but got {}", c.expected, c.got);
            }
        }
        let total: u128 = self.checks.iter().map(|c| c.millis).sum();
        let _ = writeln!(
            out,
            "{} checks: {pass} passed, {fail} failed, {skipped} skipped (total {total} ms)",
            self.checks.len()
        );
        out
    }
}
