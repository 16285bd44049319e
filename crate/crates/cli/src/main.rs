//! `cicy`: batch computation of CICY threefold invariants.
//!
//! Exit codes: 0 success, 1 some record failed (or a check was violated),
//! 2 usage error or unreadable input. Summary lines go to stdout as
//! `key=value`; diagnostics go to stderr.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use cicy_core::dataset::{FeatureFrame, InputFormat};
use cicy_core::Convention;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cicy",
    version,
    about = "Intersection numbers, Chern classes and gcd invariants of CICY threefolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute tensors, Chern data and invariants and export them.
    Compute(ComputeArgs),
    /// Write padded feature matrices, gcd labels and a manifest.
    Features(FeaturesArgs),
    /// Group records by (h11, h21, d1, d2, d3, dp).
    Classify(ClassifyArgs),
    /// Run the oracle, Euler-Hodge and permutation checks.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Configuration list (canonical JSON / JSON Lines, or .txt/.cicy text).
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Overrides the format guessed from the file extension.
    #[arg(long, value_name = "FORMAT", value_parser = parse_input_format)]
    input_format: Option<InputFormat>,
    /// CSV table `id,h11,h21`.
    #[arg(long, value_name = "PATH")]
    hodge: Option<PathBuf>,
    /// Worker threads; defaults to CICY_WORKERS, then the number of CPUs.
    #[arg(long, env = "CICY_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    #[arg(long, default_value = "literal", value_parser = parse_convention)]
    convention: Convention,
}

impl InputArgs {
    fn workers(&self) -> usize {
        self.workers
            .map(usize::from)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Export file; nothing is written without it.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Defaults to json for a `.json` output path, csv otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct FeaturesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Directory receiving features.csv, labels.csv and manifest.json.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, default_value = "12x15", value_parser = parse_frame)]
    frame: FeatureFrame,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Bucket CSV: the tuple, the bucket size and the member ids.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Histogram CSV: bucket size and number of buckets of that size.
    #[arg(long, value_name = "PATH")]
    histogram: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Random row and column relabellings tried per record.
    #[arg(long, default_value_t = 10)]
    permutations: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

fn parse_input_format(s: &str) -> Result<InputFormat, String> {
    s.parse().map_err(|e: cicy_core::Error| e.to_string())
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e: cicy_core::Error| e.to_string())
}

fn parse_frame(s: &str) -> Result<FeatureFrame, String> {
    s.parse().map_err(|e: cicy_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => commands::cmd_compute(a),
        Command::Features(a) => commands::cmd_features(a),
        Command::Classify(a) => commands::cmd_classify(a),
        Command::Check(a) => commands::cmd_check(a),
    };
    match result {
        Ok(code) => code,
        Err(fail) => {
            eprintln!("error: {:#}", fail.error);
            ExitCode::from(fail.code)
        }
    }
}
