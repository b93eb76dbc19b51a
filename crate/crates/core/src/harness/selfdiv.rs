use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::SpfTable;
use crate::error::{Error, Result};
use crate::multiplicative::{bulk_f_range, FBlock, SignatureCache};

/// Members of `{ n <= x : f(n) | n }`, counted over `2 <= n <= x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfDividingReport {
    pub x: u64,
    pub count: u64,
    /// `count · log x / x`.
    pub normalized: f64,
    /// Members bucketed by ω(n).
    pub omega_histogram: BTreeMap<u32, u64>,
}

/// Running totals, resumable from any block boundary.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDividingTally {
    pub count: u64,
    pub omega_histogram: BTreeMap<u32, u64>,
}

impl SelfDividingTally {
    pub fn absorb(&mut self, block: &FBlock, table: &SpfTable) {
        for (n, f) in block.iter() {
            if n >= 2 && n % f == 0 {
                self.count += 1;
                let omega = table.factorize(n).pairs().len() as u32;
                *self.omega_histogram.entry(omega).or_insert(0) += 1;
            }
        }
    }

    pub fn finish(self, x: u64) -> SelfDividingReport {
        SelfDividingReport {
            x,
            count: self.count,
            normalized: self.count as f64 * (x as f64).ln() / x as f64,
            omega_histogram: self.omega_histogram,
        }
    }
}

pub fn count_self_dividing(
    x: u64,
    table: &SpfTable,
    cache: &mut SignatureCache,
    workers: usize,
) -> Result<SelfDividingReport> {
    if x < 2 {
        return Err(Error::domain(format!("x must be at least 2, got {x}")));
    }
    let mut tally = SelfDividingTally::default();
    let mut bulk = bulk_f_range(2, x, table, cache, workers)?;
    while let Some(block) = bulk.next_block() {
        tally.absorb(&block, table);
    }
    Ok(tally.finish(x))
}
