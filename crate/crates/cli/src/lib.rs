//! Command-line front end: argument handling, report rendering and
//! checkpointed bulk runs. `main.rs` only maps [`run`] onto the process.

pub mod checkpoint;
pub mod config;
pub mod render;

use std::fmt;

use factorisatio::arith::SpfTable;
use factorisatio::harness::{
    enumerate_value_set, h_scan, interval_report, lemma4_check, omega_distribution, thm2_mertens_identity,
    thm2_parameters, SelfDividingTally, ValueSetOptions,
};
use factorisatio::multiplicative::{
    bulk_f_range, bulk_f_segmented, count_factorizations, enumerate_factorizations_with_limit, FBlock, SignatureCache,
};
use factorisatio::partitions::{
    bell_sequence, debruijn_log_bell, hardy_ramanujan_ln_estimate, partition_table, stirling_row,
};
use factorisatio::{ln_nat, BigNat, Error};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use checkpoint::Checkpointer;
use config::{Cli, Command, Format, RunConfig, TableKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INEXACT: i32 = 4;
pub const EXIT_CHECKPOINT: i32 = 5;

const MAX_PARTITION_TABLE: usize = 100_000;
const MAX_BELL_TABLE: usize = 2_000;
const MAX_STIRLING_ROW: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Parse { .. } | Error::CacheConflict { .. } => EXIT_USAGE,
            Error::Resource(_) | Error::Io(_) => EXIT_RESOURCE,
        };
        CliError::new(code, e.to_string())
    }
}

/// What to print and how to exit. A non-zero `code` here still comes with a
/// report (e.g. a value-set count that hit its node budget).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

fn report<T: Serialize>(cfg: &RunConfig, r: &T) -> String {
    match cfg.output_format {
        Some(Format::Csv) => render::csv_record(r),
        _ => render::json(r),
    }
}

fn rows(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> String {
    match cfg.output_format {
        Some(Format::Json) => render::json_rows(header, rows),
        _ => render::csv_rows(header, rows),
    }
}

fn open_cache(cfg: &RunConfig) -> Result<SignatureCache, CliError> {
    match &cfg.cache_path {
        Some(p) if p.exists() => Ok(SignatureCache::load(p)?),
        _ => Ok(SignatureCache::new()),
    }
}

fn close_cache(cfg: &RunConfig, cache: &SignatureCache) -> Result<(), CliError> {
    if let Some(p) = &cfg.cache_path {
        cache.save(p)?;
    }
    Ok(())
}

fn table(limit: u64, cfg: &RunConfig) -> Result<SpfTable, CliError> {
    Ok(SpfTable::with_budget(limit, cfg.sieve_limit)?)
}

/// Streams `f` over `[lo, hi]` into `tally`, checkpointing between blocks.
/// `None` means the run halted on request after writing a checkpoint.
fn run_bulk<T>(
    cfg: &RunConfig,
    job_id: &str,
    lo: u64,
    hi: u64,
    table: Option<&SpfTable>,
    mut absorb: impl FnMut(&mut T, &FBlock) -> Result<(), CliError>,
) -> Result<Option<(T, SignatureCache)>, CliError>
where
    T: Default + Serialize + DeserializeOwned,
{
    let ck = Checkpointer::new(&cfg.checkpoint_dir, job_id, cfg.checkpoint_every, cfg.halt_after);
    let (start, mut tally, mut cache) = match ck.resume::<T>()? {
        Some((last, tally, cache)) => {
            log::info!("resuming {job_id} after n = {last}");
            (last + 1, tally, cache)
        }
        None => (lo, T::default(), open_cache(cfg)?),
    };
    if start <= hi {
        let mut bulk = match table {
            Some(t) => bulk_f_range(start, hi, t, &mut cache, cfg.worker_count)?,
            None => bulk_f_segmented(start, hi, &mut cache, cfg.worker_count)?,
        };
        let mut since = 0u64;
        while let Some(block) = bulk.next_block() {
            absorb(&mut tally, &block)?;
            since += block.values.len() as u64;
            let done = block.hi();
            let halt = ck.halt_after.is_some_and(|h| done >= h);
            if ck.enabled() && done < hi && (since >= ck.every || halt) {
                ck.save(done, &tally, bulk.cache())?;
                since = 0;
                if halt {
                    return Ok(None);
                }
            }
        }
    }
    ck.clear();
    Ok(Some((tally, cache)))
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct IntervalTally {
    sum: u64,
}

fn halted(job: &str) -> Outcome {
    log::warn!("{job} halted after a checkpoint; rerun the same command to resume");
    Outcome { stdout: String::new(), code: EXIT_INEXACT }
}

fn cmd_tables(cfg: &RunConfig, kind: TableKind, limit: usize) -> Result<Outcome, CliError> {
    let header = ["index", "value", "estimate", "ratio"];
    let fmt_f = |v: f64| if v.is_finite() { v.to_string() } else { String::new() };
    let mut out = Vec::new();
    match kind {
        TableKind::Partitions => {
            if limit > MAX_PARTITION_TABLE {
                return Err(CliError::new(EXIT_RESOURCE, format!("partition table limit is {MAX_PARTITION_TABLE}")));
            }
            let t = partition_table(limit);
            for (n, p) in t.values().iter().enumerate() {
                let (est, ratio) = match hardy_ramanujan_ln_estimate(n as u64) {
                    Ok(ln_est) => (fmt_f(ln_est.exp()), fmt_f((ln_nat(p) - ln_est).exp())),
                    Err(_) => (String::new(), String::new()),
                };
                out.push(vec![n.to_string(), p.to_string(), est, ratio]);
            }
        }
        TableKind::Bell => {
            if limit > MAX_BELL_TABLE {
                return Err(CliError::new(EXIT_RESOURCE, format!("Bell table limit is {MAX_BELL_TABLE}")));
            }
            let b = bell_sequence(limit);
            for (k, v) in b.values().iter().enumerate() {
                let (est, ratio) = match debruijn_log_bell(k as u64) {
                    Ok(ln_est) => (fmt_f(ln_est.exp()), fmt_f((ln_nat(v) - ln_est).exp())),
                    Err(_) => (String::new(), String::new()),
                };
                out.push(vec![k.to_string(), v.to_string(), est, ratio]);
            }
        }
        TableKind::Stirling => {
            if limit > MAX_STIRLING_ROW {
                return Err(CliError::new(EXIT_RESOURCE, format!("Stirling row limit is {MAX_STIRLING_ROW}")));
            }
            let row = stirling_row(limit)?;
            for (i, v) in row.entries().iter().enumerate() {
                out.push(vec![(i + 1).to_string(), v.to_string(), String::new(), String::new()]);
            }
        }
    }
    Ok(Outcome::ok(rows(cfg, &header, &out)))
}

#[derive(Serialize)]
struct FReport {
    n: String,
    f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorizations: Option<Vec<Vec<u64>>>,
}

fn cmd_f(cfg: &RunConfig, n: u128, list: bool) -> Result<Outcome, CliError> {
    let f = count_factorizations(n)?;
    let factorizations = if list {
        let n64 =
            u64::try_from(n).map_err(|_| CliError::new(EXIT_RESOURCE, format!("{n} is beyond the listing limit")))?;
        let all = enumerate_factorizations_with_limit(n64, cfg.oracle_limit)?;
        Some(all.into_iter().map(|m| m.factors().to_vec()).collect::<Vec<_>>())
    } else {
        None
    };
    let text = match cfg.output_format {
        None => {
            let mut s = format!("{f}\n");
            for fac in factorizations.iter().flatten() {
                let parts: Vec<String> = fac.iter().map(u64::to_string).collect();
                s.push_str(&parts.join("*"));
                s.push('\n');
            }
            s
        }
        Some(_) => report(cfg, &FReport { n: n.to_string(), f: f.to_string(), factorizations }),
    };
    Ok(Outcome::ok(text))
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::F { n, list } => cmd_f(&cfg, *n, *list),
        Command::Tables { kind, limit } => cmd_tables(&cfg, *kind, *limit),
        Command::Values { x, retain } => {
            if *x == BigNat::from(0u32) {
                return Err(CliError::usage("x must be at least 1"));
            }
            let r = enumerate_value_set(x, ValueSetOptions { node_budget: cfg.node_budget, retain_values: *retain });
            let code = if r.exact { EXIT_OK } else { EXIT_INEXACT };
            Ok(Outcome { stdout: report(&cfg, &r), code })
        }
        Command::Selfdiv { x } => {
            if *x < 2 {
                return Err(CliError::usage(format!("x must be at least 2, got {x}")));
            }
            let t = table(*x, &cfg)?;
            let job = format!("selfdiv-{x}");
            let done = run_bulk(&cfg, &job, 2, *x, Some(&t), |tally: &mut SelfDividingTally, b| {
                tally.absorb(b, &t);
                Ok(())
            })?;
            let Some((tally, cache)) = done else { return Ok(halted(&job)) };
            close_cache(&cfg, &cache)?;
            Ok(Outcome::ok(report(&cfg, &tally.finish(*x))))
        }
        Command::Interval { x, y } => {
            if *y < 3 {
                return Err(CliError::usage(format!("y must be at least 3, got {y}")));
            }
            let hi = x.checked_add(*y).ok_or_else(|| CliError::usage("x + y overflows"))?;
            // sieve from 1 only when the interval is not far from the origin
            let t = if hi <= cfg.sieve_limit && x <= y { Some(table(hi.max(2), &cfg)?) } else { None };
            let job = format!("interval-{x}-{y}");
            let done = run_bulk(&cfg, &job, (*x).max(1), hi, t.as_ref(), |tally: &mut IntervalTally, b| {
                for &v in &b.values {
                    tally.sum = tally
                        .sum
                        .checked_add(v)
                        .ok_or_else(|| CliError::new(EXIT_RESOURCE, "sum of f exceeds 64 bits"))?;
                }
                Ok(())
            })?;
            let Some((tally, cache)) = done else { return Ok(halted(&job)) };
            close_cache(&cfg, &cache)?;
            let r = interval_report(*x, *y, BigNat::from(tally.sum))?;
            Ok(Outcome::ok(report(&cfg, &r)))
        }
        Command::Lemma4 { k, a, b } => Ok(Outcome::ok(report(&cfg, &lemma4_check(*k, *a, *b)?))),
        Command::Mcheck { y, k, s } => {
            let ln_y = ln_nat(y);
            let (k, s) = match (k, s) {
                (Some(k), Some(s)) => (*k, *s),
                _ => {
                    let p = thm2_parameters(y)?;
                    (k.unwrap_or(p.k), s.unwrap_or(p.s))
                }
            };
            Ok(Outcome::ok(report(&cfg, &thm2_mertens_identity(ln_y, k, s)?)))
        }
        Command::Hscan { y } => {
            let scan = h_scan(ln_nat(y))?;
            let text = match cfg.output_format {
                Some(Format::Json) => render::json(&scan),
                _ => {
                    let body: Vec<Vec<String>> =
                        scan.points.iter().map(|(k, h)| vec![k.to_string(), h.to_string()]).collect();
                    render::csv_rows(&["k", "h"], &body)
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Omegahist { x } => {
            let t = table((*x).max(2), &cfg)?;
            let d = omega_distribution(*x, &t)?;
            let text = match cfg.output_format {
                Some(Format::Csv) => {
                    let top = d.omega.keys().chain(d.big_omega.keys()).copied().max().unwrap_or(0);
                    let body: Vec<Vec<String>> = (0..=top)
                        .map(|i| {
                            let w = d.omega.get(&i).copied().unwrap_or(0);
                            let big_w = d.big_omega.get(&i).copied().unwrap_or(0);
                            vec![i.to_string(), w.to_string(), big_w.to_string()]
                        })
                        .collect();
                    render::csv_rows(&["count", "omega", "big_omega"], &body)
                }
                _ => render::json(&d),
            };
            Ok(Outcome::ok(text))
        }
    }
}
