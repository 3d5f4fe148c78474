//! The verification suite run by `selftest` and the acceptance tests.

use std::fmt::Debug;
use std::time::Instant;

use serde_json::{json, Value};

use crate::report::CheckRecord;

mod residues;
mod symbols;
mod witt;

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub inputs: Value,
    pub value: Value,
    pub pass: bool,
}

pub struct Criterion {
    pub id: &'static str,
    pub anchor: &'static str,
    pub run: fn(u64) -> Outcome,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: "c01-witt-identities", anchor: "Witt vector identities for F_n, V_n and [a]; ghost map is a ring map", run: witt::c01 },
        Criterion { id: "c02-lift-independence", anchor: "Witt arithmetic over F_p is independent of the chosen lift", run: witt::c02 },
        Criterion { id: "c03-p-typical", anchor: "p-typical decomposition of big Witt vectors", run: witt::c03 },
        Criterion { id: "c04-trace", anchor: "trace on de Rham-Witt forms: field trace, transitivity, projection formula, F/V/R", run: witt::c04 },
        Criterion { id: "c05-residue-properties", anchor: "residue on Laurent series forms: linearity, coordinate change, vanishing, dlog, closed formula", run: residues::c05 },
        Criterion { id: "c06-residue-theorem", anchor: "residue theorem on the projective line", run: residues::c06 },
        Criterion { id: "c07-weil-reciprocity", anchor: "Weil reciprocity and dlog of the tame symbol", run: symbols::c07 },
        Criterion { id: "c08-ramification", anchor: "residue after ramified pullback is multiplied by e", run: residues::c08 },
        Criterion { id: "c09-somekawa-relations", anchor: "psi kills projection-formula and reciprocity generators; psi after phi is the identity", run: symbols::c09 },
        Criterion { id: "c10-ghost-compatibility", anchor: "ghost components intertwine psi and local symbols", run: symbols::c10 },
        Criterion { id: "c11-trace-surjective", anchor: "trace W_2(F_{p^2}) -> W_2(F_p) is surjective", run: witt::c11 },
        Criterion { id: "c12-residue-trace-complex", anchor: "traces of refined residues of a 1-form sum to zero", run: residues::c12 },
    ]
}

/// Runs the criteria whose id matches `pattern` (a glob; `None` runs all).
/// Criteria run on separate threads; records come back in list order.
pub fn run_selected(seed: u64, pattern: Option<&glob::Pattern>) -> Vec<CheckRecord> {
    let chosen: Vec<Criterion> = criteria().into_iter().filter(|c| pattern.is_none_or(|p| p.matches(c.id))).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chosen.iter().map(|c| scope.spawn(move || run_one(c, seed))).collect();
        handles.into_iter().zip(&chosen).map(|(h, c)| h.join().unwrap_or_else(|_| panicked(c))).collect()
    })
}

fn run_one(c: &Criterion, seed: u64) -> CheckRecord {
    let start = Instant::now();
    let out = (c.run)(seed);
    CheckRecord {
        id: c.id.to_string(),
        anchor: c.anchor.to_string(),
        inputs: out.inputs,
        value: out.value,
        pass: out.pass,
        micros: start.elapsed().as_micros() as u64,
    }
}

fn panicked(c: &Criterion) -> CheckRecord {
    CheckRecord {
        id: c.id.to_string(),
        anchor: c.anchor.to_string(),
        inputs: Value::Null,
        value: json!({"error": "check panicked"}),
        pass: false,
        micros: 0,
    }
}

const KEEP: usize = 8;

/// Counts comparisons and keeps the first few failures.
#[derive(Default)]
pub(crate) struct Tally {
    samples: usize,
    comparisons: usize,
    failed: usize,
    failures: Vec<String>,
    nontrivial: usize,
}

impl Tally {
    pub fn sample(&mut self) {
        self.samples += 1;
    }

    pub fn nontrivial(&mut self, yes: bool) {
        if yes {
            self.nontrivial += 1;
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEEP {
            self.failures.push(msg);
        }
    }

    pub fn ok(&mut self, what: &str, cond: bool) {
        self.comparisons += 1;
        if !cond {
            self.fail(what.to_string());
        }
    }

    pub fn eq<T: PartialEq + Debug>(&mut self, what: &str, a: &T, b: &T) {
        self.comparisons += 1;
        if a != b {
            self.fail(format!("{what}: {a:?} != {b:?}"));
        }
    }

    /// Records an error as a failure.
    pub fn get<T>(&mut self, what: &str, r: somekawa_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.comparisons += 1;
                self.fail(format!("{what}: {e}"));
                None
            }
        }
    }

    /// Compares a fallible result against an expected value.
    pub fn check<T: PartialEq + Debug>(&mut self, what: &str, r: somekawa_core::Result<T>, want: &T) {
        if let Some(v) = self.get(what, r) {
            self.eq(what, &v, want);
        }
    }

    pub fn finish(self, inputs: Value) -> Outcome {
        Outcome {
            inputs,
            value: json!({
                "samples": self.samples,
                "comparisons": self.comparisons,
                "nontrivial": self.nontrivial,
                "failed": self.failed,
                "failures": self.failures,
            }),
            pass: self.failed == 0 && self.comparisons > 0,
        }
    }
}
