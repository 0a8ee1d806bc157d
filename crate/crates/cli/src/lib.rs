//! Command-line front end: compute, verify, tabulate, export.
//!
//! Subcommands:
//!
//! * `poly` — generating polynomial(s) and ground-state counts, by any of
//!   the routes or all of them cross-checked;
//! * `verify` — brute force against the recursion (plus optional oracles)
//!   over a size range, with per-size PASS/FAIL lines and a JSON summary;
//! * `table` — recursion-only tables up to large sizes;
//! * `export-matrix` — one graded differential block in sparse triplet text.
//!
//! Exit codes: 0 ok, 1 verification mismatch, 2 configuration error,
//! 3 resource cap, 4 arithmetic disagreement between routes.

pub mod commands;
pub mod config;
pub mod report;

use clap::{Args, Parser, Subcommand};

use config::{BuiltinModelArg, MethodArg, ModelArg, OracleArg, OutputArg};

#[derive(Parser, Debug)]
#[command(
    name = "nicolai",
    version,
    about = "Exact ground-state generating functions for the Nicolai and Z2 Nicolai chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute generating polynomials and ground-state counts.
    Poly(PolyArgs),
    /// Cross-verify brute force against the recursion over a size range.
    Verify(VerifyArgs),
    /// Tabulate recursion polynomials and counts (no brute-force cap).
    Table(TableArgs),
    /// Export one graded differential matrix in sparse triplet text form.
    #[command(name = "export-matrix")]
    ExportMatrix(ExportMatrixArgs),
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Chain size: N, A..B, or A..=B (both bounds inclusive).
    #[arg(long)]
    pub sites: String,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MethodArg,
    /// Field arithmetic: two-prime, rational, or prime:<p>.
    #[arg(long, default_value = "two-prime")]
    pub field: String,
    /// Seed for random prime selection (echoed in the output).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputArg,
    /// Brute-force size cap (default: NICOLAI_SIZE_CAP or 24).
    #[arg(long)]
    pub size_cap: Option<u32>,
    /// Largest size at which `--method all` also runs the Hamiltonian oracle.
    #[arg(long, default_value_t = 10)]
    pub oracle_cap: u32,
    /// Worker threads for per-degree rank jobs (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Custom supercharge, e.g. "a1 c2 a3 + a3 c4 a5" (requires --model custom).
    #[arg(long)]
    pub terms: Option<String>,
    /// Include per-method timings (off by default so output bytes are
    /// reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub model: BuiltinModelArg,
    #[arg(long)]
    pub max_sites: u32,
    #[arg(long, default_value_t = 0)]
    pub min_sites: u32,
    /// Extra oracle routes to compare (repeatable): hpl, hamiltonian.
    #[arg(long = "oracle", value_enum)]
    pub oracles: Vec<OracleArg>,
    /// Largest size at which oracle routes run; larger sizes are reported
    /// as explicit skips.
    #[arg(long, default_value_t = 10)]
    pub oracle_cap: u32,
    #[arg(long, default_value = "two-prime")]
    pub field: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub size_cap: Option<u32>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub model: BuiltinModelArg,
    #[arg(long)]
    pub max_size: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputArg,
}

#[derive(Args, Debug)]
pub struct ExportMatrixArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub sites: u32,
    /// Source degree of the block (columns; rows live at degree + deg(Q)).
    #[arg(long)]
    pub degree: u32,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long)]
    pub size_cap: Option<u32>,
    /// Custom supercharge (requires --model custom).
    #[arg(long)]
    pub terms: Option<String>,
}

/// Runs one parsed invocation, buffering all output so it can be emitted in
/// deterministic order regardless of internal parallelism.
pub fn execute(cli: Cli) -> commands::Outcome {
    let threads = match &cli.command {
        Command::Poly(a) => a.threads,
        Command::Verify(a) => a.threads,
        _ => None,
    };
    let run = || match &cli.command {
        Command::Poly(args) => commands::cmd_poly(args),
        Command::Verify(args) => commands::cmd_verify(args),
        Command::Table(args) => commands::cmd_table(args),
        Command::ExportMatrix(args) => commands::cmd_export_matrix(args),
    };
    let result = match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(nicolai::Error::Config(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    result.unwrap_or_else(|err| commands::Outcome {
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
        exit: config::exit_code_for(&err),
    })
}
