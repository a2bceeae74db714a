use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eisen_core::Flavor;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(
    name = "eisen",
    version,
    about = "Densities and moments of (shifted) Eisenstein polynomials over monogenic number fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the prime ideals of norm at most M with their splitting data.
    Split(SplitArgs),
    /// Rigorous enclosures of the density, moments and variances.
    Analytic(AnalyticArgs),
    /// Exact or sampled counts over a coefficient box.
    Empirical(EmpiricalArgs),
    /// Run both engines and check that they agree.
    Compare(CompareArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Monic defining polynomial, e.g. "x^2+1"; "x" is the rationals.
    #[arg(long, required_unless_present = "field_file", conflicts_with = "field_file")]
    pub field: Option<String>,
    /// Descriptor file containing a line `f = <polynomial>`.
    #[arg(long, value_name = "PATH")]
    pub field_file: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlavorArg {
    Plain,
    Shifted,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Plain => Flavor::Plain,
            FlavorArg::Shifted => Flavor::Shifted,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Exhaustive,
    Montecarlo,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SplitArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Largest prime-ideal norm to list.
    #[arg(short = 'M', long = "cutoff", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// Polynomial degree d.
    #[arg(short = 'd', long = "degree", value_parser = clap::value_parser!(u64).range(2..))]
    pub degree: u64,
    #[arg(long, value_enum, default_value_t = FlavorArg::Plain)]
    pub flavor: FlavorArg,
    /// Highest moment order; defaults to 2, or to the density alone when it diverges.
    #[arg(short = 'n', long = "order", value_parser = clap::value_parser!(u64).range(1..=20))]
    pub order: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct CutoffArgs {
    /// Prime ideals of norm at most M are multiplied out; the rest is bounded.
    #[arg(short = 'M', long = "cutoff", default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: u64,
    /// Dyadic precision of enclosure ends in bits; 0 keeps exact rationals.
    #[arg(long, default_value_t = 256)]
    pub precision_bits: u32,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Every coordinate of every coefficient ranges over [-H, H).
    #[arg(short = 'H', long = "height", value_parser = clap::value_parser!(u64).range(1..))]
    pub height: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, env = "EISEN_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Largest number of tuples an exhaustive scan may visit.
    #[arg(long, default_value_t = eisen_core::lab::DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug, Clone)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub poly: PolyArgs,
    #[command(flatten)]
    pub cutoff: CutoffArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct EmpiricalArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub poly: PolyArgs,
    #[command(flatten)]
    pub scan: ScanArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Flavor of the empirical side; must equal --flavor.
    #[arg(long, value_enum)]
    pub empirical_flavor: Option<FlavorArg>,
    #[command(flatten)]
    pub cutoff: CutoffArgs,
    #[command(flatten)]
    pub scan: ScanArgs,
    /// Allowed gap beyond the enclosure half-width (and 4 standard errors when sampled).
    #[arg(long, default_value_t = 0.01)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}
