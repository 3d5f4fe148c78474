//! Executes a parsed job file into a [`Report`].

use std::time::Instant;

use serde_json::{json, Value};
use somekawa_core::expr::eval_elem;
use somekawa_core::field::{Elem, Field, FieldElement};
use somekawa_core::kaehler::trace_form;
use somekawa_core::milnor::{boundary, weil_reciprocity_product, MilnorSymbol};
use somekawa_core::places::{audit_places, refined_residue_ghost, with_infinity, Place};
use somekawa_core::somekawa::{cathelineau_instance, psi, psi_witt, wr_generator_eval, SomekawaSymbol};
use somekawa_core::witt::{ghost, TruncationSet};
use somekawa_core::{Error, Result};

use crate::checks::run_selected;
use crate::eval::{eval_form, eval_witt};
use crate::jobspec::{Command, CommandKind, JobSpec};
use crate::report::{CheckRecord, Report};

/// Runs every command of `job`. A `selftest` without its own pattern uses
/// `pattern`.
pub fn run(job: &JobSpec, seed: u64, pattern: Option<&glob::Pattern>) -> Report {
    let mut report = Report::new(seed);
    report.warnings = job.warnings.clone();
    let fields = |name: &str| job.field(name);
    for cmd in &job.commands {
        if cmd.kind == CommandKind::Selftest {
            let own = cmd.pattern.as_deref().map(|p| glob::Pattern::new(p).expect("validated while parsing"));
            report.checks.extend(run_selected(seed, own.as_ref().or(pattern)));
            continue;
        }
        let start = Instant::now();
        let (value, pass) = match execute(cmd, &fields) {
            Ok(r) => r,
            Err(e) => (json!({ "error": e.to_string() }), false),
        };
        report.checks.push(CheckRecord {
            id: format!("line{}-{}", cmd.line, cmd.kind.name()),
            anchor: anchor(cmd.kind).into(),
            inputs: json!({
                "source": cmd.source,
                "field": cmd.field.to_string(),
                "S": cmd.set.elems(),
            }),
            value,
            pass,
            micros: start.elapsed().as_micros() as u64,
        });
    }
    report
}

/// The twelve built-in verification criteria as a report.
pub fn selftest(seed: u64, pattern: Option<&glob::Pattern>) -> Report {
    let mut report = Report::new(seed);
    report.checks = run_selected(seed, pattern);
    report
}

fn anchor(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::Witt => "big Witt vector arithmetic with V_n, F_n and traces",
        CommandKind::Residue => "sum of traced refined residues over all places of k(t) vanishes",
        CommandKind::Symbol => "image of a Somekawa-type symbol under the dlog map",
        CommandKind::Reciprocity => "product of normed tame symbols over all places of k(t) is 1",
        CommandKind::Cathelineau => "reciprocity relation for the Cathelineau datum maps to zero",
        CommandKind::Selftest => "built-in verification suite",
    }
}

type Fields<'a> = &'a dyn Fn(&str) -> Option<Field>;

fn execute(cmd: &Command, fields: Fields) -> Result<(Value, bool)> {
    let k = &cmd.field;
    let elem = |i: usize| -> Result<Elem> { eval_elem(&cmd.args[i].expr, k, fields) };
    let felem = |i: usize| -> Result<FieldElement> { Ok(FieldElement::new(k, elem(i)?)) };
    match cmd.kind {
        CommandKind::Witt => {
            let w = eval_witt(&cmd.args[0].expr, k, &cmd.set, fields)?;
            let mut v = json!({ "components": strings(w.components(), k) });
            if k.characteristic() == 0 {
                v["ghost"] = strings(&ghost(&w), k).into();
            }
            Ok((v, true))
        }
        CommandKind::Residue => {
            let w = eval_form(&cmd.args[0].expr, k, &cmd.set, fields)?;
            let given = (1..cmd.args.len())
                .map(|i| Place::from_element(&felem(i)?))
                .collect::<Result<Vec<_>>>()?;
            let places = with_infinity(k, &given)?;
            audit_places(&w.coords().iter().collect::<Vec<_>>(), &places)?;
            let base = places[0].base().clone();
            let mut sum = None;
            let mut rows = Vec::new();
            for p in &places {
                let r = refined_residue_ghost(&w, p)?;
                let traced = r.map_coords(|c| trace_form(p.residue_field(), &base, c))?;
                rows.push(json!({ "place": p.to_string(), "residue": r.to_string(), "traced": traced.to_string() }));
                sum = Some(match sum {
                    None => traced,
                    Some(acc) => traced.add(&acc)?,
                });
            }
            let sum = sum.expect("infinity is always present");
            Ok((json!({ "places": rows, "sum": sum.to_string() }), sum.is_zero()))
        }
        CommandKind::Symbol => {
            let witt = eval_witt(&cmd.args[0].expr, k, &cmd.set, fields)?;
            let entries = (1..cmd.args.len()).map(elem).collect::<Result<Vec<_>>>()?;
            let sym = SomekawaSymbol::new(k, k, witt, entries)?;
            let mut v = json!({ "symbol": sym.to_string() });
            if k.characteristic() == 0 {
                v["psi_witt"] = psi_witt(&sym)?.to_string().into();
            }
            if cmd.set == TruncationSet::trivial() {
                v["psi"] = psi(&sym)?.to_string().into();
            }
            Ok((v, true))
        }
        CommandKind::Reciprocity => {
            let (f, g) = (felem(0)?, felem(1)?);
            let given = (2..cmd.args.len())
                .map(|i| Place::from_element(&felem(i)?))
                .collect::<Result<Vec<_>>>()?;
            let product = weil_reciprocity_product(&f, &g, &given)?;
            let sym = MilnorSymbol::from_elements(&[f.clone(), g.clone()])?;
            let places = with_infinity(k, &given)?;
            let base = places[0].base().clone();
            let mut rows = Vec::new();
            for p in &places {
                let unit = boundary(&sym, p)?.as_unit().ok_or(Error::ZeroArgument)?;
                let norm = p.residue_field().norm_to(&unit, &base)?;
                rows.push(json!({
                    "place": p.to_string(),
                    "tame": FieldElement::new(p.residue_field(), unit).to_string(),
                    "norm": FieldElement::new(&base, norm).to_string(),
                }));
            }
            Ok((json!({ "places": rows, "product": product.to_string() }), product.is_one()))
        }
        CommandKind::Cathelineau => {
            let x = felem(0)?;
            let tail = (1..cmd.args.len()).map(felem).collect::<Result<Vec<_>>>()?;
            let datum = cathelineau_instance(&x, &tail)?;
            let eval = wr_generator_eval(&datum)?;
            let rows: Vec<Value> = eval
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "place": t.place.to_string(),
                        "index": t.index,
                        "symbol": t.symbol.to_string(),
                        "value": t.value.to_string(),
                    })
                })
                .collect();
            Ok((json!({ "terms": rows, "total": eval.total.to_string() }), eval.total.is_zero()))
        }
        CommandKind::Selftest => unreachable!("handled by run"),
    }
}

fn strings(xs: &[Elem], k: &Field) -> Vec<String> {
    xs.iter().map(|x| FieldElement::new(k, x.clone()).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jobspec::parse_jobspec;

    fn one(src: &str) -> CheckRecord {
        let job = parse_jobspec(src).unwrap();
        let mut r = run(&job, 1, None);
        assert_eq!(r.checks.len(), 1);
        r.checks.pop().unwrap()
    }

    #[test]
    fn residue_of_partial_fractions() {
        let c = one("field K = Q(t)\nresidue over K: d(t)/(t*(t-1)); t; t - 1");
        assert!(c.pass, "{}", c.value);
        assert_eq!(c.id, "line2-residue");
        assert_eq!(c.value["places"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn missing_place_is_reported() {
        let c = one("residue over Q(t): d(t)/(t*(t-1)); t");
        assert!(!c.pass);
        assert!(c.value["error"].as_str().is_some_and(|e| e.contains("not covered")), "{}", c.value);
    }

    #[test]
    fn reciprocity_and_cathelineau() {
        let c = one("reciprocity over Q(t): t^2 - 1; t + 2; t - 1; t + 1; t + 2");
        assert!(c.pass, "{}", c.value);
        let c = one("cathelineau q=2 over Q: 1/3");
        assert!(c.pass, "{}", c.value);
    }

    #[test]
    fn witt_ghost_components() {
        let c = one("witt S={1,2} over Q: [2] + 1");
        assert_eq!(c.value["ghost"], json!(["3", "5"]));
    }

    #[test]
    fn symbol_over_extension() {
        let c = one("field E = Q[a]/(a^2 - 2)\nsymbol over E: [a]; a + 1");
        assert!(c.pass);
        assert!(c.value.get("psi").is_some());
    }
}
