//! `susyhier`: evaluate SISW states, run the verification suites and export
//! figure, hierarchy and momentum data as CSV or JSON.

mod commands;
mod error;
mod figure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use susyhier::verify::suites::Suite;

use crate::error::{exit, CliError, CliResult};
use crate::output::Format;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  verification failure (the report is still written)
  2  invalid arguments
  3  I/O failure
  4  eigensolver failure (the message names the hierarchy level)
  5  resolution guard failure in a momentum transform

Environment:
  SUSYHIER_THREADS  positive integer, size of the worker pool

Units: a = 1, hbar = 1, m = 1 unless --a is given; E0 = pi^2 hbar^2 / (2 m a^2).
Energy columns come in absolute units and in units of E0 (suffix _E0).";

#[derive(Debug, Parser)]
#[command(name = "susyhier", version, about, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample psi_n^S, |psi|^2, V_S and E_n^S on a uniform grid over [0, a].
    Eval(EvalArgs),
    /// Write the data behind the three standard figures into a directory.
    Figure(FigureArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Build a grid SUSY hierarchy from a preset seed potential.
    Hierarchy(HierarchyArgs),
    /// Momentum-space wavefunction samples with a tail fit and Parseval check.
    Momentum(MomentumArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Node count n.
    #[arg(long)]
    pub n: usize,
    /// Hierarchy level S.
    #[arg(long = "S", value_name = "S")]
    pub s: usize,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Well width.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long = "max-S", value_name = "MAX_S", default_value_t = 6)]
    pub max_s: usize,
    /// all, core, momentum or hierarchy.
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// JSON report file; stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Forces every record of CHECK to fail (exercises the failure path).
    #[arg(long, value_name = "CHECK", hide = true)]
    pub test_corrupt_tolerance: Vec<String>,
}

#[derive(Debug, Args)]
pub struct HierarchyArgs {
    /// isw, ho, half-ho, half-coulomb or bouncer.
    #[arg(long)]
    pub seed: String,
    /// Number of partner steps K (levels 0..=K are written), at most 12.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MomentumArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "S", value_name = "S")]
    pub s: usize,
    /// Largest momentum sampled; defaults to 100 (n+S+1) pi hbar / a.
    #[arg(long)]
    pub pmax: Option<f64>,
    /// Number of samples on [0, pmax].
    #[arg(long, default_value_t = 2001)]
    pub samples: usize,
    /// Quadrature node budget per transform.
    #[arg(long)]
    pub max_nodes: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("SUSYHIER_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Args(format!("SUSYHIER_THREADS must be a positive integer, got '{raw}'")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Args(format!("cannot size the thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Figure(a) => figure::run(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Hierarchy(a) => commands::hierarchy(&a),
        Command::Momentum(a) => commands::momentum(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("susyhier: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn help_lists_exit_codes() {
        let help = Cli::command().render_long_help().to_string();
        for code in ["0  success", "2  invalid arguments", "5  resolution"] {
            assert!(help.contains(code), "{help}");
        }
    }
}
