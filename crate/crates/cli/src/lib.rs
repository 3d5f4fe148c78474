//! Job files, verification suites and reports on top of `somekawa-core`.

pub mod checks;
pub mod eval;
pub mod gen;
pub mod jobspec;
pub mod report;
pub mod run;
