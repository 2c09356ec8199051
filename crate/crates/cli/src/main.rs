//! `neareuclid` — defect estimation, near-isometry construction, inequality
//! verification, and family sweeps for finite-dimensional normed spaces.
//!
//! Exit codes: 0 success, 2 bad configuration, 3 I/O failure, 4 search
//! failure, 5 verification violations.

mod commands;
mod config;
mod emit;

use clap::{Parser, Subcommand};
use commands::CmdOutput;
use config::{CliError, OutputFormat, Overrides, RunParams};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "neareuclid",
    version,
    about = "Parallelogram-law defects and near-isometries of normed spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration (space document plus parameters).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format (sweep always emits csv).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Seed for every randomized stage.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Sampling budget for estimators.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Samples per inequality check.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Residual tolerance for orthogonality searches.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Upper bound on worker concurrency. Results never depend on it; the
    /// current implementation runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the von Neumann-Jordan and James constants of a space.
    Vnj,
    /// Build a near-isometry onto Euclidean space and measure its distortion.
    Build,
    /// Check the bracket inequalities on seeded random samples.
    Verify,
    /// Sweep a family (p-grid or blend-t grid) across dimensions into CSV.
    Sweep,
}

fn load_params(cli: &Cli) -> Result<RunParams, CliError> {
    let doc = match &cli.config {
        Some(path) => config::load_doc(path)?,
        None => Default::default(),
    };
    config::merge(
        doc,
        Overrides {
            out: cli.out.clone(),
            format: cli.format,
            seed: cli.seed,
            budget: cli.budget,
            samples: cli.samples,
            tol: cli.tol,
            threads: cli.threads,
        },
    )
}

fn write_output(params: &RunParams, body: &str) -> Result<(), CliError> {
    match &params.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let params = load_params(cli)?;
    let CmdOutput { body, exit } = match cli.command {
        Command::Vnj => commands::cmd_vnj(&params)?,
        Command::Build => commands::cmd_build(&params)?,
        Command::Verify => commands::cmd_verify(&params)?,
        Command::Sweep => commands::cmd_sweep(&params)?,
    };
    write_output(&params, &body)?;
    Ok(exit)
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
