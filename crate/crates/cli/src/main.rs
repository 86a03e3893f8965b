mod analyze;
mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "dirac-graph", version, about = "Dirac operators and Hodge Laplacians of graph clique complexes")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Truncate the clique complex at this dimension.
    #[arg(long, global = true)]
    pub max_dim: Option<usize>,

    /// Relative tolerance for numerical identity checks.
    #[arg(long, global = true, default_value_t = 1e-8, allow_hyphen_values = true)]
    pub tolerance: f64,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Complex time parameter, e.g. `1+2i`.
    #[arg(long = "t", global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: Option<Complex64>,

    /// Number of time steps or map iterations.
    #[arg(long, global = true, default_value_t = 20)]
    pub steps: usize,

    /// Seed for random cochains.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    MckeanSinger,
    GaussBonnet,
    Handshake,
    Parity,
    Hodge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Evolution {
    Heat,
    Wave,
    Schrodinger,
    Map,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Dirac,
    Laplacian,
    Incidence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a built-in graph in edge-list format.
    Gen {
        /// One of the built-in generator names.
        name: String,
        /// Size parameter for the parametric families.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Full report for a graph file, or for every file in a directory.
    Analyze { path: PathBuf },
    /// Dirac spectrum (or Laplacian spectra with `--operator laplacian`).
    Spectrum {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Operator::Dirac)]
        operator: Operator,
    },
    /// Betti numbers from exact ranks.
    Betti { file: PathBuf },
    /// Run one identity check; exits 3 when it fails.
    Verify {
        #[arg(value_enum)]
        check: Check,
        file: PathBuf,
    },
    /// Time series of an evolution equation, started from a random cochain.
    Evolve {
        #[arg(value_enum)]
        kind: Evolution,
        file: PathBuf,
    },
    /// Simplex and spectral distance between two graphs, with the Lidskii bound.
    Compare { first: PathBuf, second: PathBuf },
    /// Per-vertex curvature.
    Curvature { file: PathBuf },
    /// Nerve of a cover (one patch per line) with its validation report.
    Nerve { graph: PathBuf, cover: PathBuf },
    /// Remove vertices with contractible unit spheres until none remain.
    Contract { file: PathBuf },
    /// Export an operator matrix as dense CSV or coordinate triples.
    Matrix {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Operator::Dirac)]
        operator: Operator,
        /// Form degree for `incidence` (d_p) and `laplacian` (L_p); omit for the full Laplacian.
        #[arg(long)]
        degree: Option<usize>,
        /// Emit `row col value` triples instead of a dense table.
        #[arg(long)]
        coo: bool,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    cleaned.parse::<Complex64>().map_err(|e| format!("`{s}` is not a complex number: {e}"))
}

/// Text to print and, when an identity check failed, the reason.
pub struct Emitted {
    pub body: String,
    pub failure: Option<String>,
}

impl Emitted {
    pub fn ok(body: String) -> Self {
        Self { body, failure: None }
    }
}

fn run(cli: &Cli) -> CliResult<Emitted> {
    let o = &cli.opts;
    if o.tolerance.is_nan() || o.tolerance <= 0.0 {
        return Err(CliError::Argument(format!("--tolerance must be positive, got {}", o.tolerance)));
    }
    match &cli.command {
        Command::Gen { name, n } => commands::gen(name, *n),
        Command::Analyze { path } => analyze::analyze_path(path, o),
        Command::Spectrum { file, operator } => commands::spectrum(file, *operator, o),
        Command::Betti { file } => commands::betti(file, o),
        Command::Verify { check, file } => commands::verify(*check, file, o),
        Command::Evolve { kind, file } => commands::evolve(*kind, file, o),
        Command::Compare { first, second } => commands::compare(first, second, o),
        Command::Curvature { file } => commands::curvature(file, o),
        Command::Nerve { graph, cover } => commands::nerve(graph, cover, o),
        Command::Contract { file } => commands::contract(file, o),
        Command::Matrix { file, operator, degree, coo } => commands::matrix(file, *operator, *degree, *coo, o),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.body);
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(reason) => {
                    eprintln!("dirac-graph: check failed: {reason}");
                    ExitCode::from(error::EXIT_IDENTITY)
                }
            }
        }
        Err(e) => {
            eprintln!("dirac-graph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
