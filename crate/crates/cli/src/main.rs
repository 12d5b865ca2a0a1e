//! `cotanasym`: command-line front end to the cotangent-sum library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "cotanasym",
    version,
    about = "High-precision cotangent sums, g_n coefficients and their asymptotics"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Working precision in decimal digits; chosen automatically when absent.
    #[arg(long, global = true)]
    pub digits: Option<u32>,

    /// Significant digits printed for each high-precision value.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    pub out_digits: u32,

    /// Bernoulli number cache (`k numerator denominator` lines), read at
    /// startup and rewritten with any new values on exit.
    #[arg(long, global = true, env = "COTANASYM_BERNOULLI_CACHE")]
    pub bernoulli_cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Taylor coefficients g_n of the reciprocity function at 1.
    Gn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..))]
        n: u64,
        /// Number of consecutive indices starting at n.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// The cotangent sum c(h/k).
    Cot {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    /// g(h/k) from cotangent sums against its Taylor series at 1.
    Grecip {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 80)]
        taylor_n: u64,
    },
    /// Exact coefficients C̃_0 … C̃_L of the asymptotic series.
    Coeffs {
        #[arg(long)]
        max_l: u32,
    },
    /// Loss-of-significance guards G1 and Ginf, with recommended precision.
    Guard {
        /// One or more indices (repeat the flag).
        #[arg(long, required = true, value_parser = clap::value_parser!(u64).range(2..))]
        n: Vec<u64>,
    },
    /// g_n − 1/n minus the order-L truncation of its asymptotic series.
    Residual {
        #[arg(long)]
        n_start: u64,
        #[arg(long)]
        n_end: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
        #[arg(long = "L", value_name = "L")]
        order: u32,
    },
    /// Normalised order-4 remainder and its predicted order-5 term.
    Figure {
        #[arg(long)]
        n_start: u64,
        #[arg(long)]
        n_end: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
    },
    /// g_n − 1/n from the divisor-sum integral representation.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        /// Number of divisor-series terms.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        m_max: u64,
    },
    /// Runs the property suite and prints one line per property.
    Verify {
        /// Replace the high-n figure run with a quick moderate-n check.
        #[arg(long)]
        fast: bool,
        /// Only run the listed checks (e.g. A1 A4).
        ids: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli, std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::ChecksFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
