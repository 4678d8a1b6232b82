//! Command-line front end for the unoperation simulator.
//!
//! Four subcommands: `unadd` and `unmul` run the devices and compare
//! against the brute-force oracles, `verify` checks the full-unadder
//! invariants, `bench` times unadder runs across widths and backends.
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error.

pub mod args;
pub mod commands;
pub mod output;
pub mod report;

use std::time::Instant;

use anyhow::Result;

pub use args::Cli;
use args::Command;

/// Runs one parsed command, prints its report to stdout and the measured
/// wall time to stderr, and returns the exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    let started = Instant::now();
    let (outcome, format) = match &cli.command {
        Command::Unadd(args) => (commands::cmd_unadd(args)?, args.format),
        Command::Unmul(args) => (commands::cmd_unmul(args)?, args.format),
        Command::Verify(args) => (commands::cmd_verify(args)?, args.format),
        Command::Bench(args) => (commands::cmd_bench(args)?, args.format),
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    print!("{}", output::render(&outcome.report, format, wall_ms));
    eprintln!("timing_ms {wall_ms:.3}");
    Ok(if outcome.failed { 1 } else { 0 })
}
