//! `viennot`: compute, verify and export shadow-line statistics of colored
//! permutation groups.
//!
//! Exit codes: 0 every check passed, 1 a check was falsified, 2 usage or
//! parse error, 3 a resource cap was hit.

mod commands;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "viennot",
    version,
    about = "Shadow lines, Hilbert series and characters of colored permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Size of the permutations.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,

    /// Number of colors.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,

    /// How counts are obtained.
    #[arg(long, global = true, value_enum, default_value_t = PathChoice::Both)]
    pub path: PathChoice,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = viennot_core::perm::DEFAULT_ENUMERATION_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,

    /// Largest evaluation matrix (rows) for the basis certificate.
    #[arg(long, global = true, default_value_t = viennot_core::orbit::DEFAULT_MATRIX_CAP)]
    pub matrix_cap: u64,

    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shadow decomposition, P and Q tableaux and shadow monomial of one element.
    Schensted {
        /// One-line notation, e.g. `5,1,3,6,7,2,4` or `2^1,5^0,3^0,1^0,6^0,4^1`.
        word: String,
    },
    /// Hilbert series of the quotient ring for (n, r).
    Hilbert,
    /// Log-concavity and unimodality of the colored lis distribution.
    Analyze,
    /// Irreducible labels per degree against the Hilbert coefficients.
    Strata,
    /// Basis, vanishing, decomposition and insertion certificates.
    Verify,
    /// Distribution of a statistic as CSV.
    Histogram {
        #[arg(long, value_enum, default_value_t = KindArg::C)]
        kind: KindArg,
    },
    /// Character table with class sizes.
    Chartable,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PathChoice {
    Enumerate,
    Fast,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// lis over 𝔖ₙ
    A,
    /// signed statistic over Bₙ
    B,
    /// colored statistic over 𝔖ₙ,ᵣ
    C,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] viennot_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(viennot_core::Error::SizeLimit { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 2,
        }
    }
}

/// Output of one command and whether all its checks passed.
pub struct Report {
    pub body: String,
    pub passed: bool,
}

fn emit(cli: &Cli, body: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let mut f = File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            f.write_all(body.as_bytes()).map_err(|source| CliError::Io { path: path.clone(), source })
        }
        None => {
            let mut out = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = out.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let report = commands::dispatch(cli)?;
    emit(cli, &report.body)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("viennot: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
