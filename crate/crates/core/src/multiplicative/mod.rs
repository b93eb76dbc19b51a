//! The multiplicative partition function `f(n)`.
//!
//! Three independent routes compute it:
//!
//! - [`count_factorizations`]: the divisor recursion
//!   `F(r, m) = Σ_{d | r, 2 <= d <= m} F(r/d, d)`, `F(1, ·) = 1`, on actual
//!   integers, memoized per call.
//! - [`f_of_signature`]: a recurrence over prime signatures whose
//!   subproblems are themselves signatures, so every intermediate value is
//!   safe to keep in the shared [`SignatureCache`].
//! - [`multiset_partition_count`]: an unbounded-knapsack count of multiset
//!   partitions over the lattice of sub-multisets.
//!
//! [`enumerate_factorizations`] lists the factorizations outright and is the
//! oracle the other three are tested against.

mod bulk;
mod cache;
mod knapsack;
mod recurrence;

pub use bulk::{bulk_f_range, bulk_f_segmented, BulkF, FBlock};
pub use cache::SignatureCache;
pub use knapsack::{multiset_partition_count, multiset_partition_count_with, MultisetLimits};
pub use recurrence::f_of_signature;

use std::collections::HashMap;

use crate::arith::{factorize, Factorization};
use crate::error::{Error, Result};
use crate::partitions::partition_table;
use crate::BigNat;

/// Default upper limit for [`enumerate_factorizations`].
pub const DEFAULT_ORACLE_LIMIT: u64 = 1_000_000;

/// One unordered factorization, factors listed non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorizationMultiset {
    factors: Vec<u64>,
}

impl FactorizationMultiset {
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::domain("factors must be at least 2"));
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FactorizationMultiset { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn product(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }
}

/// Exact `f(n)` by the divisor recursion. `f(1) = 1`.
pub fn count_factorizations(n: u128) -> Result<BigNat> {
    let fac = factorize(n, None)?;
    Ok(BigNat::from(DivisorRecursion::new(&fac).count(n, n)))
}

struct DivisorRecursion {
    primes: Vec<u128>,
    // Descending divisors of each remainder seen so far.
    divisors: HashMap<u128, Vec<u128>>,
    // Keyed by (remainder, bound) with bound <= remainder. f(n) <= n, so the
    // counts fit in u128 whenever n does.
    memo: HashMap<(u128, u128), u128>,
}

impl DivisorRecursion {
    fn new(fac: &Factorization) -> Self {
        DivisorRecursion {
            primes: fac.pairs().iter().map(|&(p, _)| p as u128).collect(),
            divisors: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn divisors_of(&mut self, r: u128) -> &[u128] {
        let primes = &self.primes;
        self.divisors.entry(r).or_insert_with(|| {
            let mut divs = vec![1u128];
            let mut rem = r;
            for &p in primes {
                let start = divs.len();
                let mut pk = 1u128;
                while rem.is_multiple_of(p) {
                    rem /= p;
                    pk *= p;
                    for i in 0..start {
                        divs.push(divs[i] * pk);
                    }
                }
            }
            divs.sort_unstable_by(|a, b| b.cmp(a));
            divs
        })
    }

    fn count(&mut self, r: u128, bound: u128) -> u128 {
        if r == 1 {
            return 1;
        }
        let bound = bound.min(r);
        if let Some(&v) = self.memo.get(&(r, bound)) {
            return v;
        }
        let divs: Vec<u128> =
            self.divisors_of(r).iter().copied().skip_while(|&d| d > bound).take_while(|&d| d >= 2).collect();
        let mut total = 0u128;
        for d in divs {
            total += self.count(r / d, d);
        }
        self.memo.insert((r, bound), total);
        total
    }
}

/// Lists every unordered factorization of `n` into factors `>= 2`.
///
/// Divisors are found by trial division at each node, independently of the
/// factorization-driven divisor generation in [`count_factorizations`].
/// `n = 1` yields the single empty factorization.
pub fn enumerate_factorizations(n: u64) -> Result<Vec<FactorizationMultiset>> {
    enumerate_factorizations_with_limit(n, DEFAULT_ORACLE_LIMIT)
}

pub fn enumerate_factorizations_with_limit(n: u64, limit: u64) -> Result<Vec<FactorizationMultiset>> {
    if n == 0 {
        return Err(Error::domain("0 has no factorizations"));
    }
    if n > limit {
        return Err(Error::resource(format!("{n} exceeds the oracle limit {limit}")));
    }
    fn go(r: u64, bound: u64, prefix: &mut Vec<u64>, out: &mut Vec<FactorizationMultiset>) {
        if r == 1 {
            out.push(FactorizationMultiset { factors: prefix.clone() });
            return;
        }
        let mut divs = Vec::new();
        let mut i = 1u64;
        while i * i <= r {
            if r.is_multiple_of(i) {
                divs.push(i);
                divs.push(r / i);
            }
            i += 1;
        }
        divs.sort_unstable_by(|a, b| b.cmp(a));
        divs.dedup();
        for d in divs {
            if d > bound || d < 2 {
                continue;
            }
            prefix.push(d);
            go(r / d, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `(f(2^a), p(a))`, computed independently; the two must agree.
pub fn f_prime_power_identity(a: u32) -> Result<(BigNat, BigNat)> {
    if a >= 128 {
        return Err(Error::resource("2^a must fit in 128 bits"));
    }
    let f = count_factorizations(1u128 << a)?;
    let p = partition_table(a as usize).values()[a as usize].clone();
    Ok((f, p))
}

/// α₁(n), the largest exponent in the factorization of `n >= 2`.
pub fn max_exponent(n: u128) -> Result<u32> {
    if n < 2 {
        return Err(Error::domain(format!("max_exponent needs n >= 2, got {n}")));
    }
    Ok(factorize(n, None)?.signature().max_exponent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{canonical_n0, first_primes, PrimeSignature};
    use crate::partitions::bell_sequence;

    fn f(n: u128) -> u64 {
        count_factorizations(n).unwrap().try_into().unwrap()
    }

    #[test]
    fn worked_example() {
        assert_eq!(f(28), 4);
        let list = enumerate_factorizations(28).unwrap();
        let got: Vec<Vec<u64>> = list.iter().map(|m| m.factors().to_vec()).collect();
        assert_eq!(got, vec![vec![28], vec![14, 2], vec![7, 4], vec![7, 2, 2]]);
    }

    #[test]
    fn small_examples() {
        assert_eq!(f(1), 1);
        assert_eq!(f(12), 4);
        assert_eq!(f(36), 9);
        for p in [2u128, 3, 97, 7919, 1_000_003] {
            assert_eq!(f(p), 1);
        }
        assert_eq!(enumerate_factorizations(12).unwrap().len(), 4);
        assert_eq!(enumerate_factorizations(36).unwrap().len(), 9);
        let eight: Vec<Vec<u64>> = enumerate_factorizations(8).unwrap().iter().map(|m| m.factors().to_vec()).collect();
        assert_eq!(eight, vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(enumerate_factorizations(97).unwrap()[0].factors(), &[97]);
        assert!(count_factorizations(0).is_err());
        assert!(matches!(enumerate_factorizations(1_000_001), Err(Error::Resource(_))));
        assert_eq!(enumerate_factorizations(1).unwrap().len(), 1);
    }

    #[test]
    fn oracle_listing_is_canonical_and_complete() {
        for n in 2..=3000u64 {
            let list = enumerate_factorizations(n).unwrap();
            assert_eq!(list.len() as u64, f(n as u128), "n = {n}");
            let mut seen = std::collections::HashSet::new();
            for m in &list {
                assert_eq!(m.product(), n as u128);
                assert!(m.factors().windows(2).all(|w| w[0] >= w[1]));
                assert!(seen.insert(m.clone()));
            }
        }
    }

    #[test]
    fn prime_power_identity() {
        assert_eq!(f_prime_power_identity(0).unwrap(), (BigNat::from(1u32), BigNat::from(1u32)));
        assert_eq!(f_prime_power_identity(4).unwrap(), (BigNat::from(5u32), BigNat::from(5u32)));
        assert_eq!(f_prime_power_identity(30).unwrap(), (BigNat::from(5604u32), BigNat::from(5604u32)));
        for a in 0..=64 {
            let (l, r) = f_prime_power_identity(a).unwrap();
            assert_eq!(l, r, "a = {a}");
        }
    }

    #[test]
    fn primorial_identity() {
        let bell = bell_sequence(12);
        let primes = first_primes(12);
        let mut n = 1u128;
        for k in 1..=12 {
            n *= primes[k - 1] as u128;
            assert_eq!(count_factorizations(n).unwrap(), bell.values()[k], "k = {k}");
        }
    }

    #[test]
    fn max_exponent_examples() {
        assert_eq!(max_exponent(28).unwrap(), 2);
        assert_eq!(max_exponent(1024).unwrap(), 10);
        assert_eq!(max_exponent(1080).unwrap(), 3);
        assert!(max_exponent(1).is_err());
    }

    #[test]
    fn signature_examples_agree_with_n() {
        // 12 = 2^2 * 3 and 28 = 2^2 * 7 share signature (2, 1).
        assert_eq!(f(12), f(28));
        let sig = PrimeSignature::new(vec![2, 1]).unwrap();
        assert_eq!(canonical_n0(&sig), BigNat::from(12u32));
    }
}
