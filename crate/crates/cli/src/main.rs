//! `photon-gbd`: tables, figure data, identity checks, Monte Carlo comparisons
//! and device scenarios for photon-number statistics under flux splitting.
//!
//! Data goes to stdout (or `--output`), logs to stderr. Exit status 0 means
//! success, 1 a failed check or sampling run, 2 a usage error.

mod figures;
mod model_args;
mod output;
mod pmf;
mod sample;
mod scenario;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] photon_gbd::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(photon_gbd::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}

/// Whether the checks a command ran held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "photon-gbd", version, about, long_about = None)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Photon-number distribution p_k of one beam.
    Pmf(pmf::PmfArgs),
    /// Data for the split-probability figures.
    Figures(figures::FiguresArgs),
    /// Numerical identity checks over the default parameter grids.
    Verify(verify::VerifyArgs),
    /// Monte Carlo histogram against the analytic distribution.
    Sample(sample::SampleArgs),
    /// Joint and marginal output tables of a splitting device.
    Scenario(scenario::ScenarioArgs),
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Pmf(args) => pmf::run(args, out),
        Command::Figures(args) => figures::run(args, out),
        Command::Verify(args) => verify::run(args, out),
        Command::Sample(args) => sample::run(args, out),
        Command::Scenario(args) => scenario::run(args, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    eprintln!(
        "photon-gbd: wall time {:.3} s",
        start.elapsed().as_secs_f64()
    );
    match result {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("photon-gbd: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
