use std::path::PathBuf;

use bicov::IndexTriple;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bicov",
    version,
    about = "Validity bounds and flexibility indices for bivariate covariance models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model's Gram matrices for positive semidefiniteness.
    Validate(ValidateArgs),
    /// Emit the colocated-correlation bound curve over alpha12.
    Bound(BoundArgs),
    /// Sup-difference index D.
    Dindex(IndexArgs),
    /// Integral index D-tilde.
    Dtilde(DtildeArgs),
    /// LMC versus bivariate exponential over a grid of colocated correlations.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Root {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub path: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    /// Number of uniformly sampled sites.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dim: u8,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Relative eigenvalue tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Also fail when rho12 exceeds the closed-form bound.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha11: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha22: f64,
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    /// Index triple i,k,j (compares R_ii with R_kj).
    #[arg(long, value_parser = parse_triple)]
    pub triple: IndexTriple,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub grid: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DtildeArgs {
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    #[arg(long, value_parser = parse_triple)]
    pub triple: IndexTriple,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub abstol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// LMC descriptor; its latent correlations are used, its loadings ignored.
    #[arg(long, value_name = "PATH")]
    pub lmc: PathBuf,
    /// Bivariate exponential descriptor; its rates are used, rho12 ignored.
    #[arg(long = "exp", value_name = "PATH")]
    pub exp: PathBuf,
    /// start:stop:step, or a comma-separated list.
    #[arg(long = "rho-grid")]
    pub rho_grid: String,
    #[arg(long, value_parser = parse_triple)]
    pub triple: IndexTriple,
    #[arg(long, value_enum, default_value_t = Root::Plus)]
    pub root: Root,
    #[command(flatten)]
    pub output: Output,
}

fn parse_triple(s: &str) -> Result<IndexTriple, String> {
    s.parse().map_err(|e: bicov::Error| e.to_string())
}
