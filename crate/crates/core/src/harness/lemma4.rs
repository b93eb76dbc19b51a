use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::serde_big;
use crate::arith::{primes_in_range, PrimeSignature};
use crate::error::{Error, Result};
use crate::multiplicative::{f_of_signature, SignatureCache};
use crate::partitions::stirling_row;
use crate::BigNat;

const DEFAULT_M_BUDGET: u64 = 10_000_000;
const MAX_WINDOW_PRIMES: usize = 20_000;
const DEFAULT_POWER_WEIGHT: u32 = 16;

fn window(k: u32, a: f64, b: f64) -> Result<Vec<u64>> {
    if !(a >= 2.0) || !(b >= a) || !b.is_finite() {
        return Err(Error::domain(format!("need 2 <= A <= B, got A = {a}, B = {b}")));
    }
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    primes_in_range(a, b)
}

/// Squarefree `m` with exactly `k` prime factors, all in `[A, B]`, ascending.
pub fn enumerate_m(k: u32, a: f64, b: f64) -> Result<Vec<u64>> {
    enumerate_m_with_budget(k, a, b, DEFAULT_M_BUDGET)
}

pub fn enumerate_m_with_budget(k: u32, a: f64, b: f64, budget: u64) -> Result<Vec<u64>> {
    let primes = window(k, a, b)?;
    let size = binomial(BigNat::from(primes.len()), BigNat::from(k));
    if size > BigNat::from(budget) {
        return Err(Error::resource(format!("{size} products exceed the budget of {budget}")));
    }
    fn go(primes: &[u64], k: u32, acc: u64, out: &mut Vec<u64>) -> Result<()> {
        if k == 0 {
            out.push(acc);
            return Ok(());
        }
        for (i, &p) in primes.iter().enumerate() {
            if primes.len() - i < k as usize {
                break;
            }
            let next = acc.checked_mul(p).ok_or_else(|| Error::resource("product exceeds 64 bits"))?;
            go(&primes[i + 1..], k - 1, next, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(&primes, k, 1, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma4Check {
    pub k: u32,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub prime_count: usize,
    /// `Σ_{m ∈ M} 1/m`.
    #[serde(serialize_with = "serde_big::rational")]
    pub lhs: BigRational,
    /// `S^k/k! - (Σ 1/p²)·S^{k-2}/(k-2)!`, both sums over the window.
    #[serde(serialize_with = "serde_big::rational")]
    pub rhs: BigRational,
    pub lhs_approx: f64,
    pub rhs_approx: f64,
    pub holds: bool,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Exact check of the lower bound for the reciprocal sum over `M_{k,A,B}`.
pub fn lemma4_check(k: u32, a: f64, b: f64) -> Result<Lemma4Check> {
    if k < 2 {
        return Err(Error::domain(format!("need k >= 2, got {k}")));
    }
    let primes = window(k, a, b)?;
    if primes.len() > MAX_WINDOW_PRIMES {
        return Err(Error::resource(format!("{} primes in the window exceed {MAX_WINDOW_PRIMES}", primes.len())));
    }
    let k_us = k as usize;

    // e_j(1/p) over the primes seen so far equals n[j] / prod.
    let mut prod = BigInt::one();
    let mut n = vec![BigInt::zero(); k_us + 1];
    n[0] = BigInt::one();
    for &p in &primes {
        let p = BigInt::from(p);
        for j in (1..=k_us).rev() {
            let lower = n[j - 1].clone();
            n[j] = &n[j] * &p + lower;
        }
        n[0] = &n[0] * &p;
        prod *= &p;
    }
    let lhs = BigRational::new(n[k_us].clone(), prod.clone());

    let s = BigRational::new(n[1].clone(), prod.clone());
    let t_num: BigInt = primes
        .iter()
        .map(|&p| {
            let q = &prod / BigInt::from(p);
            &q * &q
        })
        .sum();
    let t = BigRational::new(t_num, &prod * &prod);
    let rhs = s.pow(k as i32) / BigRational::from_integer(factorial(k as u64))
        - t * s.pow(k as i32 - 2) / BigRational::from_integer(factorial(k as u64 - 2));

    Ok(Lemma4Check {
        k,
        a,
        b,
        prime_count: primes.len(),
        lhs_approx: lhs.to_f64().unwrap_or(f64::NAN),
        rhs_approx: rhs.to_f64().unwrap_or(f64::NAN),
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StirlingPowerCheck {
    pub i: u32,
    pub y: u32,
    /// Index maximizing `S(i, l)`.
    pub k_i: usize,
    /// `f` at the signature `(y, ..., y)` with `i` entries.
    #[serde(serialize_with = "serde_big::nat")]
    pub lhs: BigNat,
    /// `S(i, k_i)^y / (y·k_i)!`.
    #[serde(serialize_with = "serde_big::rational")]
    pub rhs: BigRational,
    pub holds: bool,
}

pub fn stirling_power_bound_check(i: u32, y: u32) -> Result<StirlingPowerCheck> {
    stirling_power_bound_check_with_budget(i, y, DEFAULT_POWER_WEIGHT)
}

/// As [`stirling_power_bound_check`], allowing `i·y` up to `max_weight`.
pub fn stirling_power_bound_check_with_budget(i: u32, y: u32, max_weight: u32) -> Result<StirlingPowerCheck> {
    if i == 0 || y == 0 {
        return Err(Error::domain(format!("need i, y >= 1, got i = {i}, y = {y}")));
    }
    if i.saturating_mul(y) > max_weight {
        return Err(Error::resource(format!("i·y = {} exceeds the limit {max_weight}", i as u64 * y as u64)));
    }
    let lhs = f_of_signature(&PrimeSignature::new(vec![y; i as usize])?, &mut SignatureCache::new());
    let row = stirling_row(i as usize)?;
    let k_i = row.argmax();
    let top = BigInt::from(row.max().clone()).pow(y);
    let rhs = BigRational::new(top, factorial(y as u64 * k_i as u64));
    let holds = BigRational::from_integer(BigInt::from(lhs.clone())) >= rhs;
    Ok(StirlingPowerCheck { i, y, k_i, lhs, rhs, holds })
}
