//! Command-line front end: parses arguments, runs one computation and writes
//! a JSON report.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::{ErrorObject, ErrorReport, Report, VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] linarr::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Domain(e) => e.kind(),
            CliError::Input(_) => "input",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "linarr",
    version,
    about = "Invariants of rational plane line arrangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection points with multiplicities, and a two-pencil cover if there is one.
    Lattice { file: PathBuf },
    /// Exhaustive search for multinets with k classes.
    Multinet {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        mmax: u32,
    },
    /// Modular Aomoto-Betti number.
    Betti {
        file: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Dimension of a graded piece of the Milnor algebra.
    Milnor {
        #[arg(long)]
        poly: String,
        /// Comma-separated variable order; inferred from the polynomial if absent.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
        /// Prime for the modular cross-check.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Spectrum and monodromy table of a weighted homogeneous isolated singularity.
    Spectrum {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Join of two monodromy tables.
    Join { a: PathBuf, b: PathBuf },
    /// Alexander polynomial of an arrangement covered by two pencils.
    Alexander {
        file: PathBuf,
        /// Report the lattice-only formula instead of running the pipeline.
        #[arg(long)]
        conjectural: bool,
    },
    /// Cubical diagrams.
    Cube {
        #[command(subcommand)]
        command: CubeCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CubeCommand {
    /// Checks the codimension hypotheses for a pair of hyperresolutions.
    Check(CubeCheck),
    /// Semisimplicial levels of a diagram.
    Levels { file: PathBuf },
    /// A diagram as a 2-cube of smaller cubes.
    Reshape { file: PathBuf },
    /// Writes one of the built-in fixtures as five JSON files.
    Fixture {
        #[arg(long, value_parser = ["equal", "distinct", "mutant"])]
        case: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CubeCheck {
    #[arg(long)]
    pub dx: PathBuf,
    #[arg(long)]
    pub dy: PathBuf,
    #[arg(long)]
    pub sx: PathBuf,
    #[arg(long)]
    pub sy: PathBuf,
    #[arg(long)]
    pub embedding: PathBuf,
    #[arg(long)]
    pub dim_y: u32,
    #[arg(long)]
    pub dim_sigma_x: u32,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let args = argv[1..].to_vec();
    let mut digest = report::InputDigest::new(&args);
    match commands::dispatch(&cli.command, &mut digest) {
        Ok(result) => Outcome {
            code: 0,
            stdout: report::to_pretty(&Report {
                command: args,
                input_digest: digest.finish(),
                version: VERSION,
                result,
            }),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: report::to_pretty(&ErrorReport {
                command: args,
                version: VERSION,
                error: ErrorObject {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                },
            }),
            stderr: String::new(),
        },
    }
}
