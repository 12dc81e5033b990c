//! Job-file driver for nckit: parsing, job validation, runs and reports.

pub mod error;
pub mod job;
pub mod parse;
pub mod report;
pub mod run;

pub use error::CliError;
pub use job::{Analysis, JobSpec};
pub use report::{render, Format};
pub use run::{run, Outcome};

/// Process exit code for a finished run.
pub fn exit_code(outcome: &Outcome) -> i32 {
    if outcome.undecided.is_empty() {
        0
    } else {
        2
    }
}

/// Reads, validates, runs and renders a job from JSON source.
pub fn run_json(src: &str, format: Format) -> Result<(String, Outcome), CliError> {
    let job = JobSpec::from_json(src)?;
    let outcome = run(&job)?;
    Ok((render(&outcome.report, format), outcome))
}
