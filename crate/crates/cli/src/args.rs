use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kakeya",
    version,
    about = "Lower bounds for star-shaped Kakeya sets: evaluate, optimize, verify, scan"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Cap on the needle distance
    #[arg(long, global = true)]
    pub a: Option<f64>,
    /// Cutoff radius
    #[arg(long, global = true)]
    pub r0: Option<f64>,
    /// Case I direction proportion
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Interpolation weight for r_lambda
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Absolute tolerance of the Case I quadrature
    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,
    /// Master seed (falls back to KAKEYA_SEED, then 7)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, global = true)]
    pub rlambda_convention: Option<String>,
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Comma-separated subset of csv,svg,json
    #[arg(long, global = true, value_delimiter = ',', value_enum)]
    pub emit: Option<Vec<Emit>>,
    /// Significant digits in printed numbers
    #[arg(long, global = true)]
    pub digits: Option<usize>,
    /// Flat key = value file; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Theorem,
    Cunningham,
    Sec41,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Emit {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Case I / Case II bound at one parameter point
    Bound,
    /// Maximize the bound over a search box
    Optimize(OptimizeArgs),
    /// Run the lemma checks
    Verify(VerifyArgs),
    /// Tabulate one function over a range
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct OptimizeArgs {
    /// Append this many iterative refinement steps
    #[arg(long)]
    pub refine: Option<usize>,
    #[arg(long)]
    pub a_from: Option<f64>,
    #[arg(long)]
    pub a_to: Option<f64>,
    #[arg(long)]
    pub r0_from: Option<f64>,
    #[arg(long)]
    pub r0_to: Option<f64>,
    #[arg(long)]
    pub lambda_from: Option<f64>,
    #[arg(long)]
    pub lambda_to: Option<f64>,
    /// Grid points per axis
    #[arg(long)]
    pub grid: Option<usize>,
    /// Grid points refined by coordinate search
    #[arg(long)]
    pub starts: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Run every check (the default when no --check is given)
    #[arg(long)]
    pub all: bool,
    /// Check to run; repeatable
    #[arg(long = "check")]
    pub checks: Vec<String>,
    /// Override every check's default sample count
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFunction {
    F,
    G,
    C,
    #[value(name = "case_i")]
    CaseI,
    #[value(name = "case_ii")]
    CaseIi,
    Final,
    Objective,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub function: ScanFunction,
    /// Start of the scanned variable (r for f, g, c; a otherwise)
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    /// Points per axis
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long)]
    pub a_from: Option<f64>,
    #[arg(long)]
    pub a_to: Option<f64>,
    #[arg(long)]
    pub r0_from: Option<f64>,
    #[arg(long)]
    pub r0_to: Option<f64>,
}
