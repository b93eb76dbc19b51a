use super::{Factorization, PackedSignature};
use crate::error::{Error, Result};

/// Default cap on the number of table entries (4 bytes each).
pub const DEFAULT_SPF_BUDGET: u64 = 100_000_000;

/// Smallest-prime-factor table for `0..=limit`.
///
/// Immutable once built, so it can be shared freely between worker threads.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

/// Builds an [`SpfTable`] within [`DEFAULT_SPF_BUDGET`].
pub fn build_spf(limit: u64) -> Result<SpfTable> {
    SpfTable::with_budget(limit, DEFAULT_SPF_BUDGET)
}

impl SpfTable {
    /// Linear sieve: every composite is crossed off exactly once, by its
    /// smallest prime factor.
    pub fn with_budget(limit: u64, budget: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain(format!("sieve limit must be at least 2, got {limit}")));
        }
        if limit > budget || limit >= u32::MAX as u64 {
            return Err(Error::resource(format!("sieve limit {limit} exceeds the memory budget of {budget} entries")));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfTable { spf, primes })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn smallest_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit() {
            return None;
        }
        Some(self.spf[n as usize] as u64)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.smallest_factor(n) == Some(n)
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Number of primes `<= x` (π(x)), for `x <= limit`.
    pub fn prime_count(&self, x: u64) -> u64 {
        self.primes.partition_point(|&p| (p as u64) <= x) as u64
    }

    /// Factors `n` by repeated lookup. Panics if `n` is 0 or above the limit.
    pub fn factorize(&self, n: u64) -> Factorization {
        assert!(n >= 1 && n <= self.limit(), "{n} outside sieve range");
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        let mut rem = n as usize;
        while rem > 1 {
            let p = self.spf[rem];
            let mut e = 0;
            while rem.is_multiple_of(p as usize) {
                rem /= p as usize;
                e += 1;
            }
            pairs.push((p as u64, e));
        }
        Factorization { pairs }
    }

    /// Allocation-free signature of `n`, for `1 <= n <= limit`.
    pub fn packed_signature(&self, n: u64) -> PackedSignature {
        let mut exps = [0u8; PackedSignature::CAPACITY];
        let mut len = 0;
        let mut rem = n as usize;
        while rem > 1 {
            let p = self.spf[rem] as usize;
            let mut e = 0u8;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            exps[len] = e;
            len += 1;
        }
        PackedSignature::from_unsorted(&mut exps[..len])
    }
}
