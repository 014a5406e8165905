//! Command-line front end: parses inputs, runs the library and renders JSON
//! reports with verification status for every reported generator.

mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use orbitope::elab2::DEFAULT_CUT_DIM_CAP;
use orbitope::orbit::DEFAULT_MAX_ORDER;

pub use report::{CliError, Mode, RunReport};

/// Environment variable capping the dimension of exact symbolic mode.
pub const MAX_DIM_ENV: &str = "ORBITOPE_MAX_DIM";

/// Default number of sampled points in Monte-Carlo mode.
pub const DEFAULT_SAMPLES: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "orbitope", version, about = "Exact affine symmetry groups of orbit polytopes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of sampled points in Monte-Carlo mode.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Require the exact symbolic computation.
    #[arg(long, global = true)]
    exact: bool,
    /// Largest group order accepted when closing generators.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Worker threads for sampling; 0 uses every core. Never changes output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Include realizing matrices and group elements in the output.
    #[arg(long, global = true)]
    emit_matrices: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Linear symmetry group of a vector family.
    Linsym {
        #[arg(long)]
        family: PathBuf,
    },
    /// Affine symmetry group of the orbit polytope of a point.
    OrbitSym(GroupPoint),
    /// Symmetry group of generic orbit polytopes.
    GenericSym(GroupOnly),
    /// Whether a point is generic.
    IsGeneric(GroupPoint),
    /// Whether the symmetry group of an orbit polytope is generically closed.
    ClosureCheck(GroupPoint),
    /// Affine symmetry group of the representation polytope.
    ReppolySym(GroupOnly),
    /// Splitting idempotent of an orbit.
    Idempotent(GroupPoint),
    /// Whether inversion is a symmetry of an orbit polytope.
    InversionTest(GroupPoint),
    /// Compares the symmetry groups of an idempotent and its complement.
    GaleCheck(GroupPoint),
    /// Affine symmetries of the cut polytope of a connected graph.
    Cutpoly {
        #[arg(long)]
        graph: PathBuf,
        /// Largest cut-space dimension to enumerate.
        #[arg(long, default_value_t = DEFAULT_CUT_DIM_CAP)]
        cap: usize,
    },
    /// Representation polytope of the elementary abelian 2-group given by a
    /// GF(2) matrix.
    Elab2Sym {
        #[arg(long)]
        c_matrix: PathBuf,
        /// Use the signed permutation representation instead of the
        /// diagonal one.
        #[arg(long)]
        permutation: bool,
    },
    /// Membership in the class of graphs with tree complements.
    ClassTCheck {
        #[arg(long)]
        graph: PathBuf,
    },
    /// The complement of the asymmetric caterpillar tree on n vertices.
    Caterpillar { n: usize },
    /// Counts ideal characters against |GL(n, 2)|.
    CountIdealBound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u64,
    },
}

#[derive(Args, Debug)]
struct GroupOnly {
    /// Group JSON: {"dim": d, "generators": [matrix, …]}.
    #[arg(long)]
    group: PathBuf,
}

#[derive(Args, Debug)]
struct GroupPoint {
    #[arg(long)]
    group: PathBuf,
    /// Comma-separated rational coordinates, e.g. "2,1".
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

/// Global options shared by all subcommands.
#[derive(Clone, Debug)]
struct Options {
    seed: u64,
    samples: Option<usize>,
    exact: bool,
    max_order: usize,
    threads: usize,
    emit_matrices: bool,
    max_dim: Option<usize>,
}

fn max_dim_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_DIM_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Env(format!("{MAX_DIM_ENV}={s:?} is not a dimension"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Env(e.to_string())),
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> Result<RunReport, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv)?;
    if cli.exact && cli.samples.is_some() {
        return Err(CliError::Parse("--exact and --samples are mutually exclusive".into()));
    }
    let options = Options {
        seed: cli.seed,
        samples: cli.samples,
        exact: cli.exact,
        max_order: cli.max_order,
        threads: cli.threads,
        emit_matrices: cli.emit_matrices,
        max_dim: max_dim_from_env()?,
    };
    let start = Instant::now();
    let mut inputs = input::Inputs::default();
    let (mode, result) = commands::run(&cli.command, &options, &mut inputs)?;
    Ok(RunReport {
        command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        input_digest: inputs.digest(),
        mode,
        result,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match dispatch(argv) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.render() + "\n",
            stderr: String::new(),
        },
        Err(CliError::Usage(e)) if e.exit_code() == 0 => Outcome {
            code: 0,
            stdout: e.to_string(),
            stderr: String::new(),
        },
        Err(CliError::Usage(e)) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: e.to_string(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
