//! Exact and asymptotic partition numbers `p(n)`, Bell numbers `B_k` and
//! Stirling numbers of the second kind `S(k, l)`.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::BigNat;

/// `p(n)` for `0 <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<BigNat>,
}

impl PartitionTable {
    pub fn values(&self) -> &[BigNat] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigNat> {
        self.values.get(n)
    }

    /// Largest index in the table.
    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }
}

/// Exact `p(n)` for `n <= max_n` by Euler's pentagonal-number recurrence
/// `p(n) = Σ_{k>=1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_table(max_n: usize) -> PartitionTable {
    let mut values: Vec<BigNat> = Vec::with_capacity(max_n + 1);
    values.push(BigNat::one());
    for n in 1..=max_n {
        let mut plus = BigNat::zero();
        let mut minus = BigNat::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &values[n - g1];
            if g2 <= n {
                *acc += &values[n - g2];
            }
        }
        values.push(plus - minus);
    }
    PartitionTable { values }
}

/// `ln` of the Hardy-Ramanujan main term `exp(π√(2n/3)) / (4n√3)`.
pub fn hardy_ramanujan_ln_estimate(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("the Hardy-Ramanujan estimate needs n >= 1"));
    }
    let n = n as f64;
    Ok(PI * (2.0 * n / 3.0).sqrt() - (4.0 * n * 3f64.sqrt()).ln())
}

/// The Hardy-Ramanujan main term for `p(n)`. Returns `+inf` once the value
/// leaves the `f64` range; [`hardy_ramanujan_ln_estimate`] stays finite.
pub fn hardy_ramanujan_estimate(n: u64) -> Result<f64> {
    hardy_ramanujan_ln_estimate(n).map(f64::exp)
}

/// `B_k` for `0 <= k <= K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellSequence {
    values: Vec<BigNat>,
}

impl BellSequence {
    pub fn values(&self) -> &[BigNat] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<&BigNat> {
        self.values.get(k)
    }
}

/// Bell numbers from the Bell triangle: each row starts with the last entry
/// of the previous row, and each further entry adds its left neighbour and
/// the entry above that neighbour.
pub fn bell_sequence(max_k: usize) -> BellSequence {
    let mut values = vec![BigNat::one()];
    let mut row = vec![BigNat::one()];
    for _ in 1..=max_k {
        values.push(row.last().cloned().unwrap());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap());
        for above in &row {
            let v = next.last().unwrap() + above;
            next.push(v);
        }
        row = next;
    }
    BellSequence { values }
}

/// Row `k` of the Stirling triangle of the second kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingRow {
    k: usize,
    // entries[l - 1] = S(k, l)
    entries: Vec<BigNat>,
}

impl StirlingRow {
    /// The row for `k = 1`.
    pub fn first() -> Self {
        StirlingRow { k: 1, entries: vec![BigNat::one()] }
    }

    /// `S(k+1, l) = l·S(k, l) + S(k, l-1)`.
    pub fn next_row(&self) -> Self {
        let mut entries = Vec::with_capacity(self.k + 1);
        for l in 1..=self.k + 1 {
            let mut v = if l <= self.k { &self.entries[l - 1] * BigUint::from(l) } else { BigNat::zero() };
            if l >= 2 {
                v += &self.entries[l - 2];
            }
            entries.push(v);
        }
        StirlingRow { k: self.k + 1, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `S(k, l)`; zero outside `1..=k`.
    pub fn get(&self, l: usize) -> BigNat {
        if l == 0 || l > self.k {
            BigNat::zero()
        } else {
            self.entries[l - 1].clone()
        }
    }

    /// `S(k, 1), ..., S(k, k)`.
    pub fn entries(&self) -> &[BigNat] {
        &self.entries
    }

    pub fn sum(&self) -> BigNat {
        self.entries.iter().sum()
    }

    /// Smallest `l` at which the row attains its maximum.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.entries.iter().enumerate() {
            if *v > self.entries[best] {
                best = i;
            }
        }
        best + 1
    }

    pub fn max(&self) -> &BigNat {
        &self.entries[self.argmax() - 1]
    }

    /// Non-decreasing up to a peak and non-increasing after it, with at most
    /// two equal entries at the top.
    pub fn is_unimodal(&self) -> bool {
        let e = &self.entries;
        let mut i = 1;
        while i < e.len() && e[i] > e[i - 1] {
            i += 1;
        }
        if i < e.len() && e[i] == e[i - 1] {
            i += 1;
        }
        while i < e.len() && e[i] < e[i - 1] {
            i += 1;
        }
        i == e.len()
    }
}

/// Iterates Stirling rows `1, 2, 3, ...`.
pub fn stirling_rows() -> impl Iterator<Item = StirlingRow> {
    std::iter::successors(Some(StirlingRow::first()), |r| Some(r.next_row()))
}

pub fn stirling_row(k: usize) -> Result<StirlingRow> {
    if k == 0 {
        return Err(Error::domain("Stirling rows start at k = 1"));
    }
    Ok(stirling_rows().nth(k - 1).unwrap())
}

/// The explicit terms of de Bruijn's expansion, scaled by `k`:
/// `k (log k - log log k - 1 + log log k / log k + 1 / log k)`.
pub fn debruijn_log_bell(k: u64) -> Result<f64> {
    if k < 3 {
        return Err(Error::domain(format!("log log k must be positive; got k = {k}")));
    }
    let kf = k as f64;
    let l = kf.ln();
    let ll = l.ln();
    Ok(kf * (l - ll - 1.0 + ll / l + 1.0 / l))
}

/// Index `k_t` maximizing `S(t, l)`, ties to the smaller index.
pub fn argmax_stirling(t: usize) -> Result<usize> {
    Ok(stirling_row(t)?.argmax())
}

/// `ceil(B_t / t)`, which never exceeds `S(t, k_t)` because the row has `t`
/// entries summing to `B_t`.
pub fn max_stirling_lower_bound(t: usize) -> Result<BigNat> {
    if t == 0 {
        return Err(Error::domain("t must be positive"));
    }
    let bell = bell_sequence(t).values[t].clone();
    Ok(Integer::div_ceil(&bell, &BigUint::from(t)))
}
