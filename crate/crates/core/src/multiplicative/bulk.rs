use std::collections::HashMap;

use rayon::prelude::*;

use super::{f_of_signature, SignatureCache};
use crate::arith::{PackedSignature, SegmentedFactorizer, SpfTable};
use crate::error::{Error, Result};
use crate::BigNat;

const CHUNK: u64 = 1 << 16;
const CHUNKS_PER_WORKER: u64 = 4;

/// `f(n)` for a run of consecutive integers starting at `lo`.
///
/// `f(n) <= n`, so on the bulk paths (`n < 2^64`) every value is a `u64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FBlock {
    pub lo: u64,
    pub values: Vec<u64>,
}

impl FBlock {
    /// Last integer covered by the block.
    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64 - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &f)| (self.lo + i as u64, f))
    }
}

enum Source<'a> {
    Spf(&'a SpfTable),
    Segmented(SegmentedFactorizer),
}

impl Source<'_> {
    fn signatures(&self, lo: u64, hi: u64) -> Vec<PackedSignature> {
        match self {
            Source::Spf(t) => (lo..=hi).map(|n| t.packed_signature(n)).collect(),
            Source::Segmented(s) => s.signatures(lo, hi),
        }
    }
}

/// Streams `(n, f(n))` over `[lo, hi]` in ascending order.
///
/// Factoring is sharded across a private worker pool; new signatures are
/// evaluated on the calling thread against the shared cache, so the output
/// and the final cache contents do not depend on the worker count.
pub struct BulkF<'a> {
    source: Source<'a>,
    cache: &'a mut SignatureCache,
    memo: HashMap<PackedSignature, u64>,
    pool: rayon::ThreadPool,
    workers: u64,
    next: u64,
    hi: u64,
    current: Option<FBlock>,
    pos: usize,
}

/// [`BulkF`] over a range covered by an SPF table. `lo >= 1`; `f(1) = 1`.
pub fn bulk_f_range<'a>(
    lo: u64,
    hi: u64,
    table: &'a SpfTable,
    cache: &'a mut SignatureCache,
    workers: usize,
) -> Result<BulkF<'a>> {
    if hi > table.limit() {
        return Err(Error::domain(format!("range end {hi} exceeds the sieve limit {}", table.limit())));
    }
    BulkF::new(Source::Spf(table), lo, hi, cache, workers)
}

/// [`BulkF`] for ranges beyond any SPF table, factoring block by block with a
/// segmented sieve.
pub fn bulk_f_segmented(lo: u64, hi: u64, cache: &mut SignatureCache, workers: usize) -> Result<BulkF<'_>> {
    let source = Source::Segmented(SegmentedFactorizer::new(hi)?);
    BulkF::new(source, lo, hi, cache, workers)
}

impl<'a> BulkF<'a> {
    fn new(source: Source<'a>, lo: u64, hi: u64, cache: &'a mut SignatureCache, workers: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::domain(format!("invalid range [{lo}, {hi}]")));
        }
        if workers == 0 {
            return Err(Error::domain("worker count must be at least 1"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::resource(format!("cannot start worker pool: {e}")))?;
        Ok(BulkF {
            source,
            cache,
            memo: HashMap::new(),
            pool,
            workers: workers as u64,
            next: lo,
            hi,
            current: None,
            pos: 0,
        })
    }

    /// The signature cache being filled, e.g. for snapshots between blocks.
    pub fn cache(&self) -> &SignatureCache {
        self.cache
    }

    /// The next block of values, or `None` once `hi` has been passed.
    pub fn next_block(&mut self) -> Option<FBlock> {
        if self.next > self.hi {
            return None;
        }
        let lo = self.next;
        let span = CHUNK * CHUNKS_PER_WORKER * self.workers;
        let hi = self.hi.min(lo.saturating_add(span - 1));
        self.next = hi + 1;

        let chunks: Vec<(u64, u64)> = (lo..=hi).step_by(CHUNK as usize).map(|a| (a, hi.min(a + CHUNK - 1))).collect();
        let source = &self.source;
        let memo = &self.memo;
        // 0 marks a signature not yet in the memo; f is never 0.
        let parts: Vec<(Vec<PackedSignature>, Vec<u64>)> = self.pool.install(|| {
            chunks
                .par_iter()
                .map(|&(a, b)| {
                    let sigs = source.signatures(a, b);
                    let vals = sigs.iter().map(|s| memo.get(s).copied().unwrap_or(0)).collect();
                    (sigs, vals)
                })
                .collect()
        });

        let mut values = Vec::with_capacity((hi - lo + 1) as usize);
        for (sigs, vals) in parts {
            for (sig, mut v) in sigs.into_iter().zip(vals) {
                if v == 0 {
                    v = self.value_of(sig);
                }
                values.push(v);
            }
        }
        Some(FBlock { lo, values })
    }

    fn value_of(&mut self, sig: PackedSignature) -> u64 {
        if let Some(&v) = self.memo.get(&sig) {
            return v;
        }
        let big: BigNat = f_of_signature(&sig.to_signature(), self.cache);
        let v = u64::try_from(big).expect("f(n) <= n < 2^64");
        self.memo.insert(sig, v);
        v
    }
}

impl Iterator for BulkF<'_> {
    type Item = (u64, BigNat);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(block) = &self.current {
                if self.pos < block.values.len() {
                    let item = (block.lo + self.pos as u64, BigNat::from(block.values[self.pos]));
                    self.pos += 1;
                    return Some(item);
                }
            }
            self.current = Some(self.next_block()?);
            self.pos = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_spf;
    use crate::multiplicative::{count_factorizations, enumerate_factorizations};

    #[test]
    fn small_range() {
        let t = build_spf(100).unwrap();
        let mut cache = SignatureCache::new();
        let got: Vec<u64> =
            bulk_f_range(2, 10, &t, &mut cache, 2).unwrap().map(|(_, f)| f.try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 2, 1, 3, 2, 2]);
        for n in 2..=10u64 {
            assert_eq!(enumerate_factorizations(n).unwrap().len() as u64, got[n as usize - 2]);
        }
        let single: Vec<_> = bulk_f_range(97, 97, &t, &mut cache, 1).unwrap().collect();
        assert_eq!(single, vec![(97, BigNat::from(1u32))]);
    }

    #[test]
    fn bulk_sum_matches_per_n() {
        let t = build_spf(100).unwrap();
        let mut cache = SignatureCache::new();
        let bulk: BigNat = bulk_f_range(1, 100, &t, &mut cache, 3).unwrap().map(|(_, f)| f).sum();
        let direct: BigNat = (1..=100u128).map(|n| count_factorizations(n).unwrap()).sum();
        assert_eq!(bulk, direct);
    }

    #[test]
    fn range_errors() {
        let t = build_spf(100).unwrap();
        let mut cache = SignatureCache::new();
        assert!(matches!(bulk_f_range(2, 101, &t, &mut cache, 1), Err(Error::Domain(_))));
        assert!(bulk_f_range(0, 10, &t, &mut cache, 1).is_err());
        assert!(bulk_f_range(20, 10, &t, &mut cache, 1).is_err());
        assert!(bulk_f_range(2, 10, &t, &mut cache, 0).is_err());
    }

    #[test]
    fn worker_count_and_source_do_not_matter() {
        let t = build_spf(700_000).unwrap();
        let run = |workers: usize| {
            let mut cache = SignatureCache::new();
            let mut bulk = bulk_f_range(1, 700_000, &t, &mut cache, workers).unwrap();
            let mut all = Vec::new();
            while let Some(b) = bulk.next_block() {
                all.extend(b.values);
            }
            (all, cache.to_text())
        };
        let (one, cache_one) = run(1);
        let (many, cache_many) = run(7);
        assert_eq!(one, many);
        assert_eq!(cache_one, cache_many);

        let mut cache = SignatureCache::new();
        let mut seg = bulk_f_segmented(1, 700_000, &mut cache, 3).unwrap();
        let mut all = Vec::new();
        while let Some(b) = seg.next_block() {
            all.extend(b.values);
        }
        assert_eq!(one, all);
    }

    #[test]
    fn warm_cache_gives_identical_answers() {
        let t = build_spf(50_000).unwrap();
        let mut warm = SignatureCache::new();
        let first: Vec<_> = bulk_f_range(2, 50_000, &t, &mut warm, 2).unwrap().collect();
        let second: Vec<_> = bulk_f_range(2, 50_000, &t, &mut warm, 2).unwrap().collect();
        let mut cold = SignatureCache::new();
        let third: Vec<_> = bulk_f_range(2, 50_000, &t, &mut cold, 4).unwrap().collect();
        assert_eq!(first, second);
        assert_eq!(first, third);
        assert!(warm.hits() > 0);
    }
}
