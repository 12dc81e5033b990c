use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nckit_cli::{exit_code, render, run, Analysis, CliError, Format, JobSpec};

#[derive(Parser)]
#[command(name = "nckit", version, about = "Invariants of finite group actions on graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Job file (JSON).
    #[arg(long)]
    job: PathBuf,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long)]
    guard: Option<usize>,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run the analyses listed in the job file.
    Run(RunArgs),
    /// Pertinency of the smash product only.
    Pertinency(RunArgs),
    /// Pseudo-reflection test only.
    Smallness(RunArgs),
    /// Trace series and reflection numbers.
    Trace(RunArgs),
    /// The Auslander map check only.
    Auslander(RunArgs),
}

fn configure_threads() {
    if let Some(n) = std::env::var("NCKIT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn execute(args: &RunArgs, preset: Option<Vec<Analysis>>) -> Result<i32, CliError> {
    let src = std::fs::read_to_string(&args.job).map_err(|source| CliError::Io {
        path: args.job.display().to_string(),
        source,
    })?;
    let mut job: JobSpec = serde_json::from_str(&src).map_err(CliError::Json)?;
    if let Some(a) = preset {
        job.analyses = a;
    }
    if let Some(n) = args.degree_bound {
        job.degree_bound = n;
    }
    if let Some(g) = args.guard {
        job.guard = g;
    }
    let outcome = run(&job)?;
    print!("{}", render(&outcome.report, args.format));
    Ok(exit_code(&outcome))
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let (args, preset) = match &cli.command {
        Command::Run(a) => (a, None),
        Command::Pertinency(a) => (a, Some(vec![Analysis::Pertinency])),
        Command::Smallness(a) => (a, Some(vec![Analysis::Smallness])),
        Command::Trace(a) => (a, Some(vec![Analysis::Trace, Analysis::Rpf])),
        Command::Auslander(a) => (a, Some(vec![Analysis::Auslander])),
    };
    match execute(args, preset) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
