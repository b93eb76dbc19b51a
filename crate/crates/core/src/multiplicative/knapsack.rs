use num_traits::{One, Zero};

use crate::arith::PrimeSignature;
use crate::error::{Error, Result};
use crate::BigNat;

/// Size limits for [`multiset_partition_count_with`].
#[derive(Debug, Clone, Copy)]
pub struct MultisetLimits {
    pub max_exponent_sum: u32,
    /// Cap on the number of inner-loop additions, `Π (aᵢ+1)(aᵢ+2)/2`.
    pub max_work: u64,
}

impl Default for MultisetLimits {
    fn default() -> Self {
        MultisetLimits { max_exponent_sum: 64, max_work: 2_000_000_000 }
    }
}

/// Number of partitions of the multiset with `aᵢ` copies of element `i`.
pub fn multiset_partition_count(sig: &PrimeSignature) -> Result<BigNat> {
    multiset_partition_count_with(sig, MultisetLimits::default())
}

/// Counts multiset partitions as the coefficient of `x^a` in
/// `Π_{0 < v <= a} 1/(1 - x^v)`: an unbounded knapsack over every nonzero
/// sub-multiset `v` as a part, on a table indexed by the sub-multisets of `a`.
pub fn multiset_partition_count_with(sig: &PrimeSignature, limits: MultisetLimits) -> Result<BigNat> {
    let a = sig.exponents();
    if sig.big_omega() > limits.max_exponent_sum {
        return Err(Error::resource(format!("exponent sum {} exceeds {}", sig.big_omega(), limits.max_exponent_sum)));
    }
    a.iter()
        .try_fold(1u64, |acc, &e| acc.checked_mul((e as u64 + 1) * (e as u64 + 2) / 2))
        .filter(|&w| w <= limits.max_work)
        .ok_or_else(|| Error::resource(format!("signature {sig} needs too much work")))?;

    match knapsack::<u128>(a) {
        Some(v) => Ok(BigNat::from(v)),
        None => Ok(knapsack::<BigNat>(a).expect("big naturals do not overflow")),
    }
}

trait Count: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self += other`, false on overflow.
    fn add_assign_checked(&mut self, other: &Self) -> bool;
}

impl Count for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add_assign_checked(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Count for BigNat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_assign_checked(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
}

fn knapsack<T: Count>(a: &[u32]) -> Option<T> {
    let k = a.len();
    // Mixed-radix strides, last coordinate fastest.
    let mut stride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * (a[i + 1] as usize + 1);
    }
    let size = if k == 0 { 1 } else { stride[0] * (a[0] as usize + 1) };
    let mut dp = vec![T::zero(); size];
    dp[0] = T::one();

    let mut part = vec![0u32; k];
    let mut u = vec![0u32; k];
    // Each nonzero part v, in index order.
    for part_idx in 1..size {
        let mut rem = part_idx;
        for i in 0..k {
            part[i] = (rem / stride[i]) as u32;
            rem %= stride[i];
        }
        // Targets w = u + v with u ranging over the box [0, a - v] in
        // increasing index order, so dp[u] already counts copies of v.
        u.fill(0);
        let mut u_idx = 0usize;
        'targets: loop {
            let target = u_idx + part_idx;
            let (lo, hi) = dp.split_at_mut(target);
            if !hi[0].add_assign_checked(&lo[u_idx]) {
                return None;
            }
            let mut i = k;
            while i > 0 {
                i -= 1;
                if u[i] < a[i] - part[i] {
                    u[i] += 1;
                    u_idx += stride[i];
                    continue 'targets;
                }
                u_idx -= u[i] as usize * stride[i];
                u[i] = 0;
            }
            break;
        }
    }
    Some(dp[size - 1].clone())
}
