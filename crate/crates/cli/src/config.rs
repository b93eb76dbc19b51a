use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use factorisatio::arith::DEFAULT_SPF_BUDGET;
use factorisatio::multiplicative::DEFAULT_ORACLE_LIMIT;
use factorisatio::BigNat;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Partitions,
    Bell,
    Stirling,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Exact unordered-factorization counts and desk-scale growth checks.
#[derive(Debug, Parser)]
#[command(name = "factorisatio", version)]
pub struct Cli {
    /// Largest smallest-prime-factor table the run may build.
    #[arg(long, global = true, default_value_t = DEFAULT_SPF_BUDGET)]
    pub sieve_limit: u64,

    /// Largest n for which `f --list` writes out every factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: u64,

    /// Signature evaluations allowed in a value-set search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub node_budget: u64,

    #[arg(long, global = true, default_value_t = default_workers())]
    pub workers: usize,

    /// Signature cache file, read at start and rewritten at the end.
    #[arg(long, global = true, env = "FACTORISATIO_CACHE")]
    pub cache: Option<PathBuf>,

    /// Output format; tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write a checkpoint after roughly this many integers (0 disables).
    #[arg(long, global = true, default_value_t = 0)]
    pub checkpoint_every: u64,

    #[arg(long, global = true, default_value = "factorisatio-checkpoints")]
    pub checkpoint_dir: PathBuf,

    /// Stop after the first checkpoint at or beyond this n (for testing resume).
    #[arg(long, global = true, hide = true)]
    pub halt_after: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of unordered factorizations of n.
    F {
        #[arg(value_parser = parse_u128)]
        n: u128,
        /// Also print every factorization.
        #[arg(long)]
        list: bool,
    },
    /// Partition numbers, Bell numbers or one Stirling row, with estimates.
    Tables { kind: TableKind, limit: usize },
    /// Distinct values of f up to x.
    Values {
        #[arg(value_parser = parse_nat)]
        x: BigNat,
        /// Include the sorted values themselves.
        #[arg(long)]
        retain: bool,
    },
    /// Integers n <= x with f(n) dividing n.
    Selfdiv {
        #[arg(value_parser = parse_u64)]
        x: u64,
    },
    /// Average of f over [x, x + y].
    Interval {
        #[arg(value_parser = parse_u64)]
        x: u64,
        #[arg(value_parser = parse_u64)]
        y: u64,
    },
    /// Reciprocal sum over squarefree k-products of primes in [A, B].
    Lemma4 {
        k: u32,
        #[arg(value_name = "A")]
        a: f64,
        #[arg(value_name = "B")]
        b: f64,
    },
    /// Prime reciprocal sum at the interval parameters against its asymptotic form.
    Mcheck {
        #[arg(value_parser = parse_nat)]
        y: BigNat,
        /// Override k (defaults to the parameter choice for y).
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
    },
    /// h(k) over every k in regime.
    Hscan {
        #[arg(value_parser = parse_nat)]
        y: BigNat,
    },
    /// Distribution of the number of prime factors up to x.
    Omegahist {
        #[arg(value_parser = parse_u64)]
        x: u64,
    },
}

/// A decimal integer or a power written `b^e`.
pub fn parse_nat(s: &str) -> Result<BigNat, String> {
    let digits = |t: &str| -> Result<BigNat, String> {
        if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
            return Err(format!("not a natural number: {s:?}"));
        }
        t.parse::<BigNat>().map_err(|e| e.to_string())
    };
    match s.trim().split_once('^') {
        Some((b, e)) => {
            let e: u32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            if e > 1_000_000 {
                return Err(format!("exponent in {s:?} is too large"));
            }
            Ok(digits(b)?.pow(e))
        }
        None => digits(s.trim()),
    }
}

fn parse_u128(s: &str) -> Result<u128, String> {
    u128::try_from(parse_nat(s)?).map_err(|_| format!("{s} does not fit in 128 bits"))
}

fn parse_u64(s: &str) -> Result<u64, String> {
    u64::try_from(parse_nat(s)?).map_err(|_| format!("{s} does not fit in 64 bits"))
}

/// Validated run-wide settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sieve_limit: u64,
    pub oracle_limit: u64,
    pub node_budget: u64,
    pub worker_count: usize,
    pub cache_path: Option<PathBuf>,
    pub output_format: Option<Format>,
    pub checkpoint_every: u64,
    pub checkpoint_dir: PathBuf,
    pub halt_after: Option<u64>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        if cli.workers == 0 {
            return Err(CliError::usage("--workers must be at least 1"));
        }
        if cli.sieve_limit < 2 || cli.oracle_limit == 0 || cli.node_budget == 0 {
            return Err(CliError::usage("limits must be positive (--sieve-limit at least 2)"));
        }
        if cli.checkpoint_every != 0 && cli.checkpoint_every < 10_000 {
            return Err(CliError::usage("--checkpoint-every must be 0 or at least 10000"));
        }
        if cli.halt_after.is_some() && cli.checkpoint_every == 0 {
            return Err(CliError::usage("--halt-after needs checkpointing enabled"));
        }
        Ok(RunConfig {
            sieve_limit: cli.sieve_limit,
            oracle_limit: cli.oracle_limit,
            node_budget: cli.node_budget,
            worker_count: cli.workers,
            cache_path: cli.cache.clone(),
            output_format: cli.format,
            checkpoint_every: cli.checkpoint_every,
            checkpoint_dir: cli.checkpoint_dir.clone(),
            halt_after: cli.halt_after,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naturals() {
        assert_eq!(parse_nat("28").unwrap(), BigNat::from(28u32));
        assert_eq!(parse_nat("10^6").unwrap(), BigNat::from(1_000_000u32));
        assert_eq!(parse_nat("10^100").unwrap().to_string().len(), 101);
        for bad in ["", "-3", "1e6", "12a", "10^", "^3", "2^x"] {
            assert!(parse_nat(bad).is_err(), "{bad}");
        }
        assert!(parse_u64("2^64").is_err());
        assert_eq!(parse_u64("2^63").unwrap(), 1 << 63);
    }

    #[test]
    fn config_validation() {
        let parse = |args: &[&str]| {
            let cli = Cli::try_parse_from(args).unwrap();
            RunConfig::from_cli(&cli)
        };
        assert!(parse(&["factorisatio", "f", "28"]).is_ok());
        assert!(parse(&["factorisatio", "--workers", "0", "f", "28"]).is_err());
        assert!(parse(&["factorisatio", "--checkpoint-every", "5", "f", "28"]).is_err());
        assert!(parse(&["factorisatio", "--checkpoint-every", "10000", "f", "28"]).is_ok());
        assert!(parse(&["factorisatio", "--halt-after", "10", "f", "28"]).is_err());
        assert!(Cli::try_parse_from(["factorisatio", "f", "abc"]).is_err());
    }
}
