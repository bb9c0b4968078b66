//! Command-line front end: verification suites, wave-function tables,
//! eigenchecks and plots.
//!
//! Exit codes: 0 success, 1 failed verification or runtime error, 2 usage.

pub mod cache;
pub mod config;
pub mod grid;
pub mod output;
pub mod plot;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{ConfigFile, Partial, RunConfig, OUT_DIR_ENV};
pub use run::Outcome;

/// Bad input: reported with exit code 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        UsageError(msg.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "givental", version, about = "Gauss-Givental representation of the open Toda chain")]
pub struct Cli {
    /// Flat key = value config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relative tolerance (quadrature) or residual threshold (eigencheck).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    /// Output directory (default: $GIVENTAL_OUT_DIR or the working directory).
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rep,
    Whittaker,
    Pairing,
    AppendixB,
    Intertwine,
    Matrix,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a symbolic or matrix verification suite.
    Verify {
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        /// Random charts for the matrix suite.
        #[arg(long)]
        charts: Option<usize>,
    },
    /// Tabulate the wave function on a grid (CSV + JSON manifest).
    Wavefunction {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// direct, recursive or closed-form.
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        /// File stem for the table and manifest.
        #[arg(long)]
        output: Option<String>,
    },
    /// Finite-difference eigenvalue residuals of H1 and H2.
    Eigencheck {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        fd_step: Option<f64>,
    },
    /// SVG plot of |psi| and arg psi from a wave table.
    Plot {
        #[arg(long)]
        input: PathBuf,
        /// Coordinate index k of x_k along the horizontal axis.
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `argv` and runs it; returns the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run::execute(cli) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}
