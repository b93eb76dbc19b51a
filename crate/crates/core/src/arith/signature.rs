use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::first_primes;
use crate::error::{Error, Result};

/// Non-increasing exponent vector of a prime factorization.
///
/// Two integers with the same signature have the same number of unordered
/// factorizations, so this is the key for every cache in the crate. The empty
/// signature stands for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeSignature(Vec<u32>);

impl PrimeSignature {
    /// Validates an already-sorted exponent list.
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::domain("signature exponents must be positive"));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain("signature exponents must be non-increasing"));
        }
        Ok(PrimeSignature(exponents))
    }

    /// Sorts the exponents non-increasing and drops zeros.
    pub fn from_unsorted(mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        PrimeSignature(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct primes, ω(n).
    pub fn omega(&self) -> u32 {
        self.0.len() as u32
    }

    /// Number of primes counted with multiplicity, Ω(n).
    pub fn big_omega(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest exponent α₁(n), or 0 for the empty signature.
    pub fn max_exponent(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Componentwise domination after zero-padding: every integer with
    /// signature `other` divides some integer with signature `self`.
    pub fn dominates(&self, other: &PrimeSignature) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }
}

impl fmt::Display for PrimeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `n₀ = 2^a₁ · 3^a₂ · 5^a₃ ⋯`, the least integer with the given signature.
pub fn canonical_n0(sig: &PrimeSignature) -> BigUint {
    let primes = first_primes(sig.0.len());
    sig.0.iter().zip(primes).fold(BigUint::one(), |acc, (&e, p)| acc * BigUint::from(p).pow(e))
}

/// A prime signature packed into one `u128`, one byte per exponent.
///
/// Every `n < 2^64` fits: ω(n) ≤ 15 and every exponent is at most 63. Used on
/// the bulk paths to avoid allocating a `Vec` per integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedSignature(u128);

impl PackedSignature {
    pub const CAPACITY: usize = 16;

    /// Packs exponents after sorting them in place. Zeros must not be present.
    pub fn from_unsorted(exps: &mut [u8]) -> Self {
        debug_assert!(exps.len() <= Self::CAPACITY);
        exps.sort_unstable_by(|a, b| b.cmp(a));
        let mut bits = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            bits |= (e as u128) << (8 * i);
        }
        PackedSignature(bits)
    }

    pub fn try_from_signature(sig: &PrimeSignature) -> Option<Self> {
        if sig.0.len() > Self::CAPACITY || sig.0.iter().any(|&e| e > u8::MAX as u32) {
            return None;
        }
        let mut bits = 0u128;
        for (i, &e) in sig.0.iter().enumerate() {
            bits |= (e as u128) << (8 * i);
        }
        Some(PackedSignature(bits))
    }

    pub fn to_signature(self) -> PrimeSignature {
        let mut v = Vec::new();
        let mut bits = self.0;
        while bits != 0 {
            v.push((bits & 0xff) as u32);
            bits >>= 8;
        }
        PrimeSignature(v)
    }

    pub fn bits(self) -> u128 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(v: &[u32]) -> PrimeSignature {
        PrimeSignature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_n0_examples() {
        assert_eq!(canonical_n0(&sig(&[2, 1])), BigUint::from(12u32));
        assert_eq!(canonical_n0(&sig(&[])), BigUint::from(1u32));
        assert_eq!(canonical_n0(&sig(&[3, 3, 1])), BigUint::from(8u32 * 27 * 5));
    }

    #[test]
    fn validation() {
        assert!(PrimeSignature::new(vec![1, 2]).is_err());
        assert!(PrimeSignature::new(vec![2, 0]).is_err());
        assert_eq!(PrimeSignature::from_unsorted(vec![1, 0, 4]).exponents(), &[4, 1]);
        assert_eq!(sig(&[3, 3, 1]).to_string(), "3,3,1");
        assert_eq!(sig(&[]).to_string(), "");
    }

    #[test]
    fn domination() {
        assert!(sig(&[2, 1]).dominates(&sig(&[1, 1])));
        assert!(sig(&[2, 1]).dominates(&sig(&[])));
        assert!(!sig(&[2]).dominates(&sig(&[1, 1])));
        assert!(!sig(&[2, 1]).dominates(&sig(&[3])));
    }

    proptest! {
        #[test]
        fn packed_roundtrip(mut v in proptest::collection::vec(1u32..64, 0..16)) {
            let s = PrimeSignature::from_unsorted(v.clone());
            let p = PackedSignature::try_from_signature(&s).unwrap();
            prop_assert_eq!(p.to_signature(), s.clone());
            let mut bytes: Vec<u8> = v.iter().map(|&e| e as u8).collect();
            prop_assert_eq!(PackedSignature::from_unsorted(&mut bytes), p);
            v.sort();
            prop_assert_eq!(s.big_omega(), v.iter().sum::<u32>());
        }

        #[test]
        fn signature_of_n0_is_the_signature(v in proptest::collection::vec(1u32..6, 0..6)) {
            let s = PrimeSignature::from_unsorted(v);
            let n0 = canonical_n0(&s);
            let n0: u128 = n0.try_into().unwrap();
            prop_assert_eq!(super::super::factorize(n0, None).unwrap().signature(), s);
        }
    }
}
