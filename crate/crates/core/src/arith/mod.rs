//! Sieves, factorization, prime signatures and prime-reciprocal sums.
//!
//! Everything downstream keys off the prime signature of `n`: the number of
//! unordered factorizations depends only on the multiset of exponents, so the
//! primes themselves are discarded as soon as a number is factored.

mod primes;
mod segmented;
mod signature;
mod spf;

pub use primes::{
    first_primes, for_each_prime_in_range, is_prime_u64, mertens_gap_estimate, prime_reciprocal_sum, primes_in_range,
    MAX_RANGE_PRIME,
};
pub use segmented::{SegmentedFactorizer, MAX_SEGMENTED};
pub use signature::{canonical_n0, PackedSignature, PrimeSignature};
pub use spf::{build_spf, SpfTable, DEFAULT_SPF_BUDGET};

use crate::error::{Error, Result};

/// Prime factorization of a natural number as `(prime, exponent)` pairs with
/// strictly increasing primes. The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from pairs, checking primality order and exponents.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::domain("primes must be strictly increasing"));
            }
        }
        for &(p, e) in &pairs {
            if e == 0 {
                return Err(Error::domain("exponents must be positive"));
            }
            if !is_prime_u64(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
        }
        Ok(Factorization { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The represented integer, or `None` if it does not fit in a `u128`.
    pub fn value(&self) -> Option<u128> {
        self.pairs.iter().try_fold(1u128, |acc, &(p, e)| (p as u128).checked_pow(e).and_then(|pe| acc.checked_mul(pe)))
    }

    pub fn signature(&self) -> PrimeSignature {
        signature(self)
    }
}

/// Factors `n`, using the smallest-prime-factor table when one is given.
///
/// Without a table this falls back to trial division by 2, 3 and the 6k±1
/// wheel, stopping early once the cofactor is a (Miller-Rabin) prime.
pub fn factorize(n: u128, table: Option<&SpfTable>) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factorize 0"));
    }
    if let Some(table) = table {
        let n = u64::try_from(n)
            .ok()
            .filter(|&n| n <= table.limit())
            .ok_or_else(|| Error::domain(format!("{n} exceeds the sieve limit {}", table.limit())))?;
        return Ok(table.factorize(n));
    }

    let mut pairs = Vec::new();
    let mut rem = n;
    let mut take = |rem: &mut u128, p: u128| {
        let mut e = 0u32;
        while (*rem).is_multiple_of(p) {
            *rem /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p as u64, e));
        }
    };
    take(&mut rem, 2);
    take(&mut rem, 3);
    let mut p: u128 = 5;
    while p * p <= rem {
        if rem > 1_000_000_000_000 && rem <= u64::MAX as u128 && is_prime_u64(rem as u64) {
            break;
        }
        take(&mut rem, p);
        take(&mut rem, p + 2);
        p += 6;
    }
    if rem > 1 {
        let rem = u64::try_from(rem).map_err(|_| Error::resource("cofactor beyond 64 bits is not supported"))?;
        pairs.push((rem, 1));
    }
    Ok(Factorization { pairs })
}

/// Exponents of a factorization sorted non-increasing.
pub fn signature(fac: &Factorization) -> PrimeSignature {
    PrimeSignature::from_unsorted(fac.pairs.iter().map(|&(_, e)| e).collect())
}

/// `(ω(n), Ω(n))`: distinct prime factors and prime factors with multiplicity.
pub fn omega_counts(n: u128) -> Result<(u32, u32)> {
    let sig = factorize(n, None)?.signature();
    Ok((sig.omega(), sig.big_omega()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u128) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2u128;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d as u64, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n as u64, 1));
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(28, None).unwrap().pairs(), &[(2, 2), (7, 1)]);
        assert!(factorize(1, None).unwrap().is_empty());
        assert!(matches!(factorize(0, None), Err(Error::Domain(_))));
        let expected = vec![(2, 6), (3, 3), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1)];
        assert_eq!(trial_division(735134400), expected);
        assert_eq!(factorize(735134400, None).unwrap().pairs(), expected.as_slice());
    }

    #[test]
    fn factorize_with_and_without_table_agree() {
        let table = build_spf(20_000).unwrap();
        for n in 1..=20_000u128 {
            let a = factorize(n, Some(&table)).unwrap();
            let b = factorize(n, None).unwrap();
            assert_eq!(a, b, "n = {n}");
            assert_eq!(a.pairs(), trial_division(n).as_slice());
        }
        assert!(matches!(factorize(20_001, Some(&table)), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_large_values() {
        let f = factorize(1u128 << 64, None).unwrap();
        assert_eq!(f.pairs(), &[(2, 64)]);
        // 2^61 - 1 is prime; the Miller-Rabin shortcut must not stall here.
        let m61 = (1u128 << 61) - 1;
        assert_eq!(factorize(m61, None).unwrap().pairs(), &[(m61 as u64, 1)]);
        let primorial: u128 = [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().product();
        assert_eq!(factorize(primorial, None).unwrap().pairs().len(), 12);
    }

    #[test]
    fn signature_examples() {
        let s = signature(&Factorization::from_pairs(vec![(2, 2), (7, 1)]).unwrap());
        assert_eq!(s.exponents(), &[2, 1]);
        assert!(signature(&Factorization::default()).is_empty());
        let s = signature(&Factorization::from_pairs(vec![(3, 1), (5, 4)]).unwrap());
        assert_eq!(s.exponents(), &[4, 1]);
    }

    #[test]
    fn from_pairs_rejects_bad_input() {
        assert!(Factorization::from_pairs(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 0)]).is_err());
        assert!(Factorization::from_pairs(vec![(4, 1)]).is_err());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_counts(28).unwrap(), (2, 3));
        assert_eq!(omega_counts(1).unwrap(), (0, 0));
        assert_eq!(omega_counts(1080).unwrap(), (3, 7));
    }
}
