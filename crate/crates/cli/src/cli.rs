use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pricetunnel", version, about = "Tunneling probability for range-bound stock prices")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Barrier geometry and transmission coefficient for one parameter set.
    Tc(TcArgs),
    /// Regenerate a reference table and compare it cell by cell.
    Tables(TablesArgs),
    /// Scan price histories for range-bound windows.
    Scan(ScanArgs),
    /// Emit the piecewise wavefunction and potential as TSV.
    Wavefunction(WavefunctionArgs),
    /// Run the numerical self-checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum EvalPoint {
    #[default]
    Entry,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Tolerance {
    /// Half-up rounding to the printed precision must reproduce the cell.
    #[default]
    Strict,
    /// Within one unit of the last printed digit.
    LastDigit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum PrefactorVariant {
    #[default]
    Numerator,
    Denominator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Source {
    #[default]
    Close,
    HighLow,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TcArgs {
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub sigma: f64,
    /// Band width measured from support.
    #[arg(long, conflicts_with_all = ["support", "resistance"], required_unless_present_all = ["support", "resistance"])]
    pub strike: Option<f64>,
    #[arg(long, requires = "resistance")]
    pub support: Option<f64>,
    #[arg(long, requires = "support")]
    pub resistance: Option<f64>,
    /// Where the thin-wall decay rate is sampled.
    #[arg(long, value_enum, default_value_t)]
    pub thin_wall_point: EvalPoint,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Shorthand for `--format json`.
    #[arg(long, conflicts_with = "format")]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,
    #[arg(long, value_enum, default_value_t)]
    pub tolerance: Tolerance,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScanArgs {
    /// OHLC CSV file; repeat for several symbols.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    /// Annualized risk-free rate.
    #[arg(long)]
    pub r: f64,
    /// Volatility CSV (`date,sigma`) per input, in the same order.
    #[arg(long)]
    pub vol: Vec<PathBuf>,
    /// Symbol per input; defaults to the upper-cased file stem.
    #[arg(long)]
    pub symbol: Vec<String>,
    #[arg(long, default_value_t = 21)]
    pub window: usize,
    #[arg(long, default_value_t = 252.0)]
    pub periods: f64,
    #[arg(long, default_value_t = 15)]
    pub min_len: usize,
    #[arg(long, default_value_t = 0.05)]
    pub band_tol: f64,
    #[arg(long, default_value_t = 2)]
    pub touch_count: usize,
    #[arg(long, default_value_t = 5)]
    pub lookback: usize,
    #[arg(long, default_value_t = 0.7)]
    pub fall_ratio: f64,
    #[arg(long, value_enum, default_value_t)]
    pub price_source: Source,
    /// Write the report as JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
    /// Report path. Without it the report goes to stdout and the event
    /// summaries to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct WavefunctionArgs {
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub strike: f64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(10..))]
    pub samples: u64,
    #[arg(long, value_enum, default_value_t)]
    pub thin_wall_point: EvalPoint,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 20130423)]
    pub seed: u64,
    /// Points in the quadrature sweep.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub points: u64,
    #[arg(long, value_enum, default_value_t)]
    pub prefactor_variant: PrefactorVariant,
}
