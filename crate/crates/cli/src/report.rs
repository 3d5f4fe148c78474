//! Report documents.
//!
//! Schema, version 1:
//!
//! ```text
//! { "version": 1, "seed": u64,
//!   "checks": [ { "id", "anchor", "inputs", "value", "pass", "micros" } ],
//!   "warnings": [string] }        // omitted when empty
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub inputs: Value,
    pub value: Value,
    pub pass: bool,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Report { version: VERSION, seed, checks: Vec::new(), warnings: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The report without timings, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.micros = 0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "seed {}", self.seed).unwrap();
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {} ({:.3} s)", c.id, c.micros as f64 / 1e6).unwrap();
            if !c.pass {
                writeln!(out, "  anchor: {}", c.anchor).unwrap();
            }
            writeln!(out, "  value: {}", c.value).unwrap();
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        writeln!(out, "{passed}/{} checks passed", self.checks.len()).unwrap();
        out
    }
}
