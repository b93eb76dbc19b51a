use num_integer::Roots;

use super::PackedSignature;

/// Largest integer the segmented factorizer accepts (base primes up to 10^7).
pub const MAX_SEGMENTED: u64 = 100_000_000_000_000;
use crate::error::{Error, Result};

/// Factors consecutive integers above any SPF table by sieving each block
/// with the primes up to `sqrt(hi)`.
#[derive(Debug, Clone)]
pub struct SegmentedFactorizer {
    hi: u64,
    base: Vec<u64>,
}

impl SegmentedFactorizer {
    /// Prepares to factor any integer up to `hi`.
    pub fn new(hi: u64) -> Result<Self> {
        if hi > MAX_SEGMENTED {
            return Err(Error::resource(format!("{hi} is beyond the segmented factorizer")));
        }
        let root = hi.sqrt();
        let mut base = Vec::new();
        super::for_each_prime_in_range(2, root.max(2), |p| base.push(p))?;
        Ok(SegmentedFactorizer { hi, base })
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Signatures of every `n` in `[lo, hi]`, in order. `lo` must be at least 1.
    pub fn signatures(&self, lo: u64, hi: u64) -> Vec<PackedSignature> {
        assert!(lo >= 1 && lo <= hi && hi <= self.hi, "range [{lo}, {hi}] outside factorizer");
        let len = (hi - lo + 1) as usize;
        let mut rem: Vec<u64> = (lo..=hi).collect();
        let mut exps = vec![[0u8; PackedSignature::CAPACITY]; len];
        let mut counts = vec![0u8; len];
        for &p in &self.base {
            if p * p > hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                let i = (m - lo) as usize;
                let mut e = 0u8;
                while rem[i].is_multiple_of(p) {
                    rem[i] /= p;
                    e += 1;
                }
                exps[i][counts[i] as usize] = e;
                counts[i] += 1;
                m += p;
            }
        }
        (0..len)
            .map(|i| {
                let mut c = counts[i] as usize;
                if rem[i] > 1 {
                    exps[i][c] = 1;
                    c += 1;
                }
                PackedSignature::from_unsorted(&mut exps[i][..c])
            })
            .collect()
    }
}
