//! Job files end to end: parsing, execution and the binary's exit codes.

use std::process::Command;

use serde_json::Value;
use somekawa::jobspec::{parse_jobspec, JobError};
use somekawa::run::run;

const JOB: &str = "\
seed 11
field K = Q(t)
witt S={1,2,3,6} over Q: V_2([5]) * V_3([7])
residue over K: d(t)/(t*(t-1)); t; t - 1
reciprocity over K: t^2 - 1; t + 2; t - 1; t + 1; t + 2
cathelineau q=2 over Q: 1/3
";

fn record<'a>(r: &'a somekawa::report::Report, id: &str) -> &'a somekawa::report::CheckRecord {
    r.checks.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no record {id}"))
}

#[test]
fn example_job() {
    let job = parse_jobspec(JOB).unwrap();
    let r = run(&job, job.seed.unwrap(), None);
    assert!(r.all_pass(), "{}", r.to_text());
    assert_eq!(r.checks.len(), 4);

    // V_2[5]·V_3[7] = V_6[5³·7²]: Witt components vanish off s = 6
    let w = record(&r, "line3-witt");
    assert_eq!(w.value["components"], serde_json::json!(["0", "0", "0", (125 * 49).to_string()]));

    // dt/(t(t−1)) = dt/(t−1) − dt/t
    let res = &record(&r, "line4-residue").value;
    let at = |place: &str| {
        res["places"].as_array().unwrap().iter().find(|p| p["place"] == place).unwrap()["residue"].clone()
    };
    assert_eq!(at("(t)"), "[1: -1]");
    assert_eq!(at("(t - 1)"), "[1: 1]");
    assert_eq!(at("∞"), "[1: 0]");
    assert_eq!(res["sum"], "[1: 0]");

    // ∂{f, g} for f = t²−1, g = t+2: 1/g at ±1, f at −2, g²/f at ∞
    let rec = &record(&r, "line5-reciprocity").value;
    let tames: Vec<&str> = rec["places"].as_array().unwrap().iter().map(|p| p["tame"].as_str().unwrap()).collect();
    assert_eq!(tames, ["1/3", "1", "3", "1"]);

    assert_eq!(record(&r, "line6-cathelineau").value["total"], "[1: 0]");
}

#[test]
fn runs_are_deterministic() {
    let job = parse_jobspec(&format!("{JOB}selftest: c0[28]*\n")).unwrap();
    let a = run(&job, 5, None).without_timings();
    let b = run(&job, 5, None).without_timings();
    assert_eq!(a.to_json(), b.to_json());
    let c = run(&job, 6, None).without_timings();
    assert_eq!(c.seed, 6);
}

#[test]
fn malformed_expression() {
    let err = parse_jobspec("field K = Q(t)\nresidue over K: d(t)/(t*(t-1); t").unwrap_err();
    assert!(matches!(err, JobError::Parse { line: 2, .. }), "{err}");
}

#[test]
fn failing_command_is_recorded() {
    let job = parse_jobspec("residue over Q(t): d(t)/(t*(t-1)); t").unwrap();
    let r = run(&job, 1, None);
    assert!(!r.all_pass());
    assert!(r.checks[0].value["error"].is_string());
    assert!(!r.checks[0].anchor.is_empty());
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_somekawa"))
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("somekawa-jobs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.job");
    std::fs::write(&good, JOB).unwrap();
    let out = bin().arg("--job").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["seed"], 11);

    let failing = dir.join("failing.job");
    std::fs::write(&failing, "residue over Q(t): d(t)/(t*(t-1)); t\n").unwrap();
    assert_eq!(bin().arg("--job").arg(&failing).output().unwrap().status.code(), Some(1));

    let bad = dir.join("bad.job");
    std::fs::write(&bad, "witt over Q: 1 + * 2\n").unwrap();
    let out = bin().arg("--job").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:18"));

    let report = dir.join("report.json");
    let out = bin().args(["--checks", "c08*", "--seed", "3", "--out"]).arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["checks"][0]["id"], "c08-ramification");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn shipped_sample_job() {
    let job = parse_jobspec(include_str!("../../../jobs/sample.job")).unwrap();
    assert!(job.warnings.is_empty(), "{:?}", job.warnings);
    let r = run(&job, 42, None);
    assert!(r.all_pass(), "{}", r.to_text());
    // Tr([a+1]) − [Tr(a+1)] over S={1,2}: ghost (2, Tr((a+1)²)) − (2, 4) = (0, 2)
    assert_eq!(record(&r, "line10-witt").value["ghost"], serde_json::json!(["0", "2"]));
    let cath = &record(&r, "line18-cathelineau").value["terms"];
    assert!(cath.as_array().unwrap().iter().any(|t| t["place"] == "(t - 1/3)"));
}
