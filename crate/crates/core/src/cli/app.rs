//! Argument parsing and dispatch for the `stokes` binary.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::commands::{
    flip_report, form_report, ideal_check_report, monodromy_report, mutation_walk_report,
    sln_triple_report, triangulation_report, DEFAULT_POINTS,
};
use super::Report;
use crate::error::{Error, Result};
use crate::polygon::{Triangulation, TriangulationJson};
use crate::stokes2::verify_fn_pushforward;
use crate::ugaglia::verify_ugaglia;

/// Exact verification of Stokes-manifold cluster structures.
#[derive(Debug, Parser)]
#[command(name = "stokes", version)]
pub struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report `elapsed_ms` as 0 so that reports are byte-reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KArg {
    /// Number of Stokes rays minus two, halved.
    #[arg(long = "K", alias = "k")]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monodromy identity of the closed-form fan parameters.
    Monodromy(KArg),
    /// The log-canonical form of a triangulation and its Poisson bivector.
    Form {
        #[command(flatten)]
        k: KArg,
        /// Triangulation JSON; the fan when omitted.
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
    /// Flip a diagonal and compare with the Y-seed mutation.
    Flip {
        #[command(flatten)]
        k: KArg,
        /// Label index `J` of the flipped diagonal `y_J`.
        #[arg(long)]
        diagonal: usize,
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
    /// Pushforward of the bracket onto the Flaschka–Newell bracket.
    FnCheck {
        #[command(flatten)]
        k: KArg,
        /// Random points when `K` exceeds the symbolic bound.
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
    },
    /// Jacobi identity, ideal identities, Casimir and corank of the
    /// Flaschka–Newell bracket.
    IdealCheck(KArg),
    /// A seeded random walk of flips from the fan.
    MutationWalk {
        #[command(flatten)]
        k: KArg,
        #[arg(long)]
        steps: usize,
    },
    /// `A₁A₂A₃ = 1` for the triangle matrices of `SL_n`.
    SlnTriple {
        #[arg(long)]
        n: usize,
    },
    /// The Ugaglia graph and the comparison with the Ugaglia bracket.
    Ugaglia {
        #[arg(long)]
        n: usize,
        /// Random points when `n > 3`.
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
    },
    /// Triangulation JSON export and import.
    #[command(subcommand)]
    Triangulation(TriangulationCommand),
}

#[derive(Debug, Subcommand)]
pub enum TriangulationCommand {
    /// Print the fan, optionally after flipping diagonals in order.
    Export {
        #[command(flatten)]
        k: KArg,
        /// Label indices of diagonals to flip, in order.
        #[arg(long = "flip", value_delimiter = ',')]
        flips: Vec<usize>,
    },
    /// Validate a triangulation file and report its combinatorics.
    Import { file: PathBuf },
}

/// Exit status and output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_triangulation(path: &Path) -> Result<Triangulation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let j: TriangulationJson =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    Triangulation::from_json(&j)
}

fn triangulation_or_fan(k: usize, path: &Option<PathBuf>) -> Result<(Triangulation, bool)> {
    match path {
        None => Ok((Triangulation::fan(k)?, true)),
        Some(p) => {
            let t = read_triangulation(p)?;
            if t.k() != k {
                return Err(Error::InvalidArgument(format!(
                    "--K {k} but the triangulation has K = {}",
                    t.k()
                )));
            }
            let fan = t == Triangulation::fan(k)?;
            Ok((t, fan))
        }
    }
}

enum Output {
    Report(Report),
    Json(String),
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let seed = cli.seed;
    let report = match &cli.command {
        Command::Monodromy(k) => monodromy_report(k.k)?,
        Command::Form { k, triangulation } => {
            let (t, fan) = triangulation_or_fan(k.k, triangulation)?;
            form_report(&t, fan)?
        }
        Command::Flip {
            k,
            diagonal,
            triangulation,
        } => {
            let (t, _) = triangulation_or_fan(k.k, triangulation)?;
            flip_report(&t, *diagonal)?
        }
        Command::FnCheck { k, points } => verify_fn_pushforward(k.k, *points, seed)?,
        Command::IdealCheck(k) => ideal_check_report(k.k, seed)?,
        Command::MutationWalk { k, steps } => mutation_walk_report(k.k, *steps, seed)?,
        Command::SlnTriple { n } => sln_triple_report(*n)?,
        Command::Ugaglia { n, points } => verify_ugaglia(*n, *points, seed)?,
        Command::Triangulation(TriangulationCommand::Export { k, flips }) => {
            let mut t = Triangulation::fan(k.k)?;
            for &i in flips {
                let d = t.diagonal_by_index(i)?.clone();
                t = t.flip(d.a, d.b)?;
            }
            let text = serde_json::to_string_pretty(&t.to_json()).expect("json");
            return Ok(Output::Json(text));
        }
        Command::Triangulation(TriangulationCommand::Import { file }) => {
            triangulation_report(&read_triangulation(file)?)?
        }
    };
    Ok(Output::Report(report))
}

/// Parses `args` (including the program name) and runs the command. Exit
/// status is 0 when every report item passes, 1 when some item fails and 2
/// on usage or input errors.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(Output::Json(text)) => Outcome {
            code: 0,
            stdout: text + "\n",
            stderr: String::new(),
        },
        Ok(Output::Report(mut r)) => {
            if cli.no_timing {
                r.elapsed_ms = 0;
            }
            Outcome {
                code: if r.all_pass() { 0 } else { 1 },
                stdout: r.to_json_string() + "\n",
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
