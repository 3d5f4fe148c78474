//! Runs the full verification suite and prints one line per criterion.
//! Built without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use somekawa::checks::run_selected;

const SEED: u64 = 42;

fn main() -> ExitCode {
    let records = run_selected(SEED, None);
    println!("acceptance: {} criteria, seed {SEED}", records.len());
    for r in &records {
        let status = if r.pass { "pass" } else { "FAIL" };
        println!("{status} {:<28} {:>8.2} s  {}", r.id, r.micros as f64 / 1e6, r.anchor);
        if !r.pass {
            println!("     {}", r.value);
        }
    }
    let failed: Vec<&str> = records.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
    if records.len() != 12 || !failed.is_empty() {
        println!("acceptance: failing criteria {failed:?}");
        return ExitCode::FAILURE;
    }
    println!("acceptance: all 12 criteria pass");
    ExitCode::SUCCESS
}
