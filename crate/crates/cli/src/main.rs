//! `knotoid`: compute knotoid invariants from PD or polyline files.
//!
//! Exit codes: 0 on success, 1 when an input cannot be read or is not a
//! valid diagram, 2 when a computation fails on valid input.

mod compute;
mod input;
mod selftest;
mod transform;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::input::Failure;

#[derive(Parser, Debug)]
#[command(name = "knotoid", version, about = "Winding homology and polynomial invariants of knotoids")]
struct Cli {
    /// Worker threads for state sums and rank computations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute invariants of one diagram.
    Compute(compute::ComputeArgs),
    /// Apply a diagram operation and write the resulting PD.
    Transform(transform::TransformArgs),
    /// Check the bundled fixtures against their expected invariants.
    Selftest(selftest::SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Compute(anyhow::anyhow!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Compute(args) => compute::run(&args),
        Command::Transform(args) => transform::run(&args),
        Command::Selftest(args) => selftest::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}

pub(crate) fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Input(anyhow::anyhow!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
