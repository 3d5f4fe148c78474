use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use somekawa::jobspec::parse_jobspec;
use somekawa::report::Report;
use somekawa::run::{run, selftest};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact computations with Witt vectors, de Rham-Witt forms, residues and
/// symbols. Without `--job`, runs the built-in verification suite.
#[derive(Parser, Debug)]
#[command(name = "somekawa", version)]
struct Cli {
    /// Job file to run.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Seed for randomized checks; overrides the job's `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout; overrides the job's `out`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Only run built-in checks whose id matches this glob.
    #[arg(long)]
    checks: Option<String>,
}

const DEFAULT_SEED: u64 = 42;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn real_main(cli: Cli) -> Result<bool, String> {
    let pattern = cli
        .checks
        .as_deref()
        .map(|p| glob::Pattern::new(p).map_err(|e| format!("--checks {p:?}: {e}")))
        .transpose()?;
    let (report, out) = match &cli.job {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let job = parse_jobspec(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let seed = cli.seed.or(job.seed).unwrap_or(DEFAULT_SEED);
            // a relative `out` in the job file is relative to the job file
            let job_out = job.out.as_ref().map(|o| path.parent().map_or(o.clone(), |d| d.join(o)));
            (run(&job, seed, pattern.as_ref()), cli.out.clone().or(job_out))
        }
        None => (selftest(cli.seed.unwrap_or(DEFAULT_SEED), pattern.as_ref()), cli.out.clone()),
    };
    emit(&report, cli.format, out)?;
    Ok(report.all_pass())
}

fn emit(report: &Report, format: Format, out: Option<PathBuf>) -> Result<(), String> {
    let doc = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(path) => fs::write(&path, doc).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}
