//! `entsym` — symmetry sectors and maximally entangled bases for N
//! identical n-level particles, from the command line.
//!
//! Exit codes: 0 success, 1 dimension-identity failure, 2 bounds/usage,
//! 3 input-data error.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use commands::{CliError, Method, VerifySource};
use entsym::symmetry::Convention;
use entsym::tableaux::Partition;

#[derive(Parser)]
#[command(
    name = "entsym",
    version,
    about = "Decompose N identical n-level particles into permutation-symmetry \
             sectors and generate/verify maximally entangled bases"
)]
struct Cli {
    /// Verdict tolerance: a state is maximal when every single-particle
    /// reduced density matrix deviates from (1/n)*Identity by less.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Output format (JSON is canonical and byte-stable).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// Clebsch-Gordan coupling left to right; degenerate copies ordered
    /// by intermediate-j path.
    #[value(alias = "sequential")]
    SequentialCoupling,
    /// Fixed reference tables (qubits, N <= 3).
    PaperFixtures,
}

impl From<ConventionArg> for Convention {
    fn from(arg: ConventionArg) -> Self {
        match arg {
            ConventionArg::SequentialCoupling => Convention::SequentialCoupling,
            ConventionArg::PaperFixtures => Convention::PaperFixtures,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Conjugate pairing across the coupled |j,m;d> basis: 2^N states
    /// (qubits only).
    PaperPairs,
    /// Root-of-unity construction: n^N states, all maximally entangled.
    Ghz,
    /// Conjugate-pairing candidates drawn from every symmetry sector's
    /// orthonormal basis (candidates may repeat; verdicts are per state).
    Sectors,
}

#[derive(Subcommand)]
enum Command {
    /// All partitions of N, largest-first.
    Partitions {
        #[arg(long = "N")]
        particles: u32,
    },
    /// Sector dimension table and the exact n^N identity check.
    Dims {
        #[arg(long = "N")]
        particles: u32,
        #[arg(long = "n")]
        levels: u32,
    },
    /// Coupled |j,m;d> basis (qubits) or orthonormal sector bases.
    Basis {
        #[arg(long = "N")]
        particles: u32,
        #[arg(long = "n")]
        levels: u32,
        /// Restrict to one sector, e.g. --lambda 2,1
        #[arg(long)]
        lambda: Option<Partition>,
        #[arg(long, value_enum, default_value_t = ConventionArg::SequentialCoupling)]
        convention: ConventionArg,
    },
    /// Generate an entangled basis and verify every state.
    Entangle {
        #[arg(long = "N")]
        particles: u32,
        #[arg(long = "n")]
        levels: u32,
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Verify maximal entanglement of a state from a file, stdin, or a
    /// seeded random draw.
    Verify {
        /// State JSON ({n, N, amplitudes}) or basis/entangle output;
        /// '-' reads stdin.
        #[arg(long)]
        input: Option<String>,
        /// Verify a reproducible pseudo-random state instead (needs
        /// --n and --N).
        #[arg(long, conflicts_with = "input")]
        seed: Option<u64>,
        #[arg(long = "n")]
        levels: Option<u32>,
        #[arg(long = "N")]
        particles: Option<u32>,
    },
    /// Weight of a state in each symmetry sector.
    Project {
        /// State JSON; '-' reads stdin.
        #[arg(long)]
        input: String,
        /// Report a single sector only.
        #[arg(long)]
        lambda: Option<Partition>,
    },
    /// Character table of the symmetric group S_N.
    Characters {
        #[arg(long = "N")]
        particles: u32,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if cli.tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be positive; got {}",
            cli.tol
        )));
    }
    let (rendered, exit_code) = match cli.command {
        Command::Partitions { particles } => (commands::cmd_partitions(particles)?, 0),
        Command::Dims { particles, levels } => {
            let (rendered, holds) = commands::cmd_dims(particles, levels)?;
            (rendered, if holds { 0 } else { 1 })
        }
        Command::Basis {
            particles,
            levels,
            lambda,
            convention,
        } => (
            commands::cmd_basis(particles, levels, lambda, convention.into())?,
            0,
        ),
        Command::Entangle {
            particles,
            levels,
            method,
        } => {
            if particles < 2 {
                return Err(CliError::Usage(
                    "entangled bases need at least two particles (--N 2 or more)".into(),
                ));
            }
            let method = match method {
                MethodArg::PaperPairs => Method::PaperPairs,
                MethodArg::Ghz => Method::Ghz,
                MethodArg::Sectors => Method::Sectors,
            };
            (
                commands::cmd_entangle(particles, levels, method, cli.tol)?,
                0,
            )
        }
        Command::Verify {
            input,
            seed,
            levels,
            particles,
        } => (
            commands::cmd_verify(
                VerifySource {
                    input,
                    seed,
                    levels,
                    particles,
                },
                cli.tol,
            )?,
            0,
        ),
        Command::Project { input, lambda } => (commands::cmd_project(&input, lambda)?, 0),
        Command::Characters { particles } => (commands::cmd_characters(particles)?, 0),
    };

    let text = match cli.format {
        Format::Json => rendered.json,
        Format::Csv => rendered.csv,
        Format::Pretty => rendered.pretty,
    };
    emit(&text, cli.output.as_deref())?;
    Ok(exit_code)
}

fn emit(text: &str, output: Option<&std::path::Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.code());
        }
    }
}
