//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use unops_core::{Backend, RunMode};

#[derive(Parser, Debug)]
#[command(
    name = "unops",
    version,
    about = "Simulates unoperation devices: unaddition and unmultiplication"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Produce every (a, b, c_in) that sums to a value
    Unadd(RunArgs),
    /// Produce every factor pair of a product
    Unmul(RunArgs),
    /// Check the full-unadder invariants
    Verify(VerifyArgs),
    /// Time unadder runs across widths and backends
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Width of each summand (unadd) or factor (unmul) in bits
    #[arg(long)]
    pub bits: u32,

    /// The sum (unadd) or product (unmul) to invert
    #[arg(long)]
    pub value: u64,

    /// Readout strategy
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Measurement shots drawn in sample mode
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,

    /// RNG seed used in sample mode; equal seeds give identical output
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// State-vector backend
    #[arg(long, value_enum, default_value_t = BackendArg::Sparse)]
    pub backend: BackendArg,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,

    /// Report aggregates only, omitting the per-outcome listing
    #[arg(long)]
    pub summary: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Also sample each branching input with this many shots
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: Option<u64>,

    /// RNG seed for the sampling checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Largest unadder width to time
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=31))]
    pub max_bits: u32,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Dense,
    Sparse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Table,
}

impl RunArgs {
    pub fn run_mode(&self) -> RunMode {
        match self.mode {
            ModeArg::Exact => RunMode::Exact,
            ModeArg::Sample => RunMode::Sample {
                shots: self.shots,
                seed: self.seed,
            },
        }
    }
}

impl ModeArg {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeArg::Exact => "exact",
            ModeArg::Sample => "sample",
        }
    }
}

impl BackendArg {
    pub fn as_str(self) -> &'static str {
        match self {
            BackendArg::Dense => "dense",
            BackendArg::Sparse => "sparse",
        }
    }
}

impl FormatArg {
    pub fn as_str(self) -> &'static str {
        match self {
            FormatArg::Json => "json",
            FormatArg::Csv => "csv",
            FormatArg::Table => "table",
        }
    }
}

impl From<BackendArg> for Backend {
    fn from(arg: BackendArg) -> Backend {
        match arg {
            BackendArg::Dense => Backend::Dense,
            BackendArg::Sparse => Backend::Sparse,
        }
    }
}
