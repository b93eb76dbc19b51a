use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::SpfTable;
use crate::error::{Error, Result};

/// Distribution of `ω(n)` and `Ω(n)` over `2 <= n <= x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaDistribution {
    pub x: u64,
    pub omega: BTreeMap<u32, u64>,
    pub big_omega: BTreeMap<u32, u64>,
    /// `10 log log x`, when positive.
    pub big_omega_threshold: Option<f64>,
    /// `#{n : Ω(n) > 10 log log x}`.
    pub big_omega_exceed: Option<u64>,
    /// `log log x / log log log x`, when defined and positive.
    pub omega_threshold: Option<f64>,
    /// `#{n : ω(n) < log log x / log log log x}`.
    pub omega_below: Option<u64>,
}

pub fn omega_distribution(x: u64, table: &SpfTable) -> Result<OmegaDistribution> {
    if x < 2 {
        return Err(Error::domain(format!("need x >= 2, got {x}")));
    }
    if x > table.limit() {
        return Err(Error::domain(format!("x = {x} exceeds the sieve limit {}", table.limit())));
    }
    let llx = (x as f64).ln().ln();
    let big_omega_threshold = (llx > 0.0).then_some(10.0 * llx);
    let omega_threshold = (llx > 1.0).then(|| llx / llx.ln());

    let mut omega = BTreeMap::new();
    let mut big_omega = BTreeMap::new();
    let mut exceed = 0u64;
    let mut below = 0u64;
    for n in 2..=x {
        let fac = table.factorize(n);
        let w = fac.pairs().len() as u32;
        let big_w: u32 = fac.pairs().iter().map(|&(_, e)| e).sum();
        *omega.entry(w).or_insert(0) += 1;
        *big_omega.entry(big_w).or_insert(0) += 1;
        if big_omega_threshold.is_some_and(|t| big_w as f64 > t) {
            exceed += 1;
        }
        if omega_threshold.is_some_and(|t| (w as f64) < t) {
            below += 1;
        }
    }
    Ok(OmegaDistribution {
        x,
        omega,
        big_omega,
        big_omega_threshold,
        big_omega_exceed: big_omega_threshold.map(|_| exceed),
        omega_threshold,
        omega_below: omega_threshold.map(|_| below),
    })
}
