use serde::Serialize;

use super::serde_big;
use crate::arith::{mertens_gap_estimate, prime_reciprocal_sum, SpfTable};
use crate::error::{Error, Result};
use crate::multiplicative::{bulk_f_range, bulk_f_segmented, SignatureCache};
use crate::{ln_nat, BigNat};

/// `log y` above which the average lower bound is asserted (`y > e^{e^e}`).
pub const ASYMPTOTIC_THRESHOLD_LN: f64 = 15.154_262_241_479_262;

/// Largest `B` for which `S_{A,B}` is sieved rather than estimated.
const SIEVE_CAP: f64 = 1e9;

/// The parameter choice for the interval lower bound at a given `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm2Params {
    pub k: u64,
    pub s: u64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "S")]
    pub s_ab: f64,
    /// `S` came from the Mertens estimate because `B` was out of sieve range.
    pub s_estimated: bool,
}

/// `S_{A,B}`, sieved when `B` is small enough and estimated otherwise.
fn reciprocal_sum(a: f64, b: f64) -> Result<(f64, bool)> {
    if b <= SIEVE_CAP {
        Ok((prime_reciprocal_sum(a, b)?, false))
    } else {
        Ok((mertens_gap_estimate(a, b)?, true))
    }
}

/// Parameters from `log y`; see [`thm2_parameters`].
pub fn thm2_parameters_ln(ln_y: f64) -> Result<Thm2Params> {
    if !(ln_y >= 16f64.ln()) || !ln_y.is_finite() {
        return Err(Error::domain(format!("need y >= 16, got log y = {ln_y}")));
    }
    let k = (ln_y.sqrt() / (2.0 * std::f64::consts::E).sqrt()).floor() as u64;
    let s = (3.0 * ln_y.ln()).floor() as u64;
    let a = (k * k) as f64;
    let b = (ln_y / (k + s + 1) as f64).exp();
    let (s_ab, s_estimated) = reciprocal_sum(a, b)?;
    Ok(Thm2Params { k, s, a, b, s_ab, s_estimated })
}

/// `k = ⌊√(log y / 2e)⌋`, `s = ⌊3 log log y⌋`, `A = k²`, `B = y^{1/(k+s+1)}`
/// and `S = Σ_{A<=p<=B} 1/p`. `k` is 0 for `y < 230`.
pub fn thm2_parameters(y: &BigNat) -> Result<Thm2Params> {
    if *y < BigNat::from(16u32) {
        return Err(Error::domain(format!("need y >= 16, got {y}")));
    }
    thm2_parameters_ln(ln_nat(y))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MertensComparison {
    pub k: u64,
    pub s: u64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub s_computed: f64,
    /// `log log y - log k - log log k - log 2`.
    pub s_asymptotic: f64,
    pub difference: f64,
    pub s_estimated: bool,
}

/// `S_{k², y^{1/(k+s+1)}}` against its four-term asymptotic form.
pub fn thm2_mertens_identity(ln_y: f64, k: u64, s: u64) -> Result<MertensComparison> {
    if k < 3 {
        return Err(Error::domain(format!("need k >= 3, got {k}")));
    }
    if !(ln_y > 1.0) || !ln_y.is_finite() {
        return Err(Error::domain(format!("need log log y > 0, got log y = {ln_y}")));
    }
    let a = (k * k) as f64;
    let b = (ln_y / (k + s + 1) as f64).exp();
    let (s_computed, s_estimated) = if b < a { (0.0, false) } else { reciprocal_sum(a, b)? };
    let kf = k as f64;
    let s_asymptotic = ln_y.ln() - kf.ln() - kf.ln().ln() - std::f64::consts::LN_2;
    Ok(MertensComparison {
        k,
        s,
        a,
        b,
        s_computed,
        s_asymptotic,
        difference: (s_computed - s_asymptotic).abs(),
        s_estimated,
    })
}

/// `h(k) = k·log(L) - k·log log k + k·log log k/log k + k/log k` with
/// `L = log log y - log k - log log k - log 2`.
pub fn h_function(k: u64, ln_y: f64) -> Result<f64> {
    if k < 3 {
        return Err(Error::domain(format!("need k >= 3, got {k}")));
    }
    let kf = k as f64;
    let llk = kf.ln().ln();
    let inner = ln_y.ln() - kf.ln() - llk - std::f64::consts::LN_2;
    if !(inner > 0.0) {
        return Err(Error::domain(format!("k = {k} is out of regime: inner logarithm argument {inner}")));
    }
    Ok(kf * inner.ln() - kf * llk + kf * llk / kf.ln() + kf / kf.ln())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HScan {
    pub ln_y: f64,
    pub points: Vec<(u64, f64)>,
    pub argmax: u64,
    /// `√(log y / 2e)`, unfloored.
    pub predicted_k: f64,
}

/// `h(k)` for every `k >= 3` inside the regime.
pub fn h_scan(ln_y: f64) -> Result<HScan> {
    let mut points = Vec::new();
    let mut k = 3;
    // the inner argument decreases in k, so the regime is an initial segment
    while let Ok(h) = h_function(k, ln_y) {
        points.push((k, h));
        k += 1;
    }
    let &(argmax, _) = points
        .iter()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .ok_or_else(|| Error::domain(format!("no k >= 3 is in regime at log y = {ln_y}")))?;
    Ok(HScan { ln_y, points, argmax, predicted_k: (ln_y / (2.0 * std::f64::consts::E)).sqrt() })
}

/// `exp((4/√(2e))·√(log y)/log log y)`.
pub fn bound_main_term(ln_y: f64) -> f64 {
    (4.0 / (2.0 * std::f64::consts::E).sqrt() * ln_y.sqrt() / ln_y.ln()).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalReport {
    pub x: u64,
    pub y: u64,
    #[serde(serialize_with = "serde_big::nat")]
    pub sum_f: BigNat,
    pub mean: f64,
    pub k: Option<u64>,
    pub s: Option<u64>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    #[serde(rename = "S")]
    pub s_ab: Option<f64>,
    pub bound_main_term: f64,
    /// `y > e^{e^e}`.
    pub in_asymptotic_regime: bool,
}

/// `Σ f(n)` over `max(x, 1) <= n <= x + y`, and that sum divided by `y`.
///
/// Uses `table` when it covers `x + y`, the segmented factorizer otherwise.
pub fn interval_average(
    x: u64,
    y: u64,
    table: Option<&SpfTable>,
    cache: &mut SignatureCache,
    workers: usize,
) -> Result<IntervalReport> {
    if y < 3 {
        return Err(Error::domain(format!("need y >= 3, got {y}")));
    }
    let hi = x.checked_add(y).ok_or_else(|| Error::domain(format!("x + y overflows: x = {x}, y = {y}")))?;
    let lo = x.max(1);
    let mut sum: u128 = 0;
    let mut bulk = match table {
        Some(t) if hi <= t.limit() => bulk_f_range(lo, hi, t, cache, workers)?,
        _ => bulk_f_segmented(lo, hi, cache, workers)?,
    };
    while let Some(block) = bulk.next_block() {
        sum += block.values.iter().map(|&v| v as u128).sum::<u128>();
    }
    interval_report(x, y, BigNat::from(sum))
}

/// Report for a sum of `f` over `[max(x, 1), x + y]` accumulated elsewhere.
pub fn interval_report(x: u64, y: u64, sum_f: BigNat) -> Result<IntervalReport> {
    if y < 3 {
        return Err(Error::domain(format!("need y >= 3, got {y}")));
    }
    let ln_y = (y as f64).ln();
    let params = if y >= 16 { Some(thm2_parameters_ln(ln_y)?) } else { None };
    Ok(IntervalReport {
        x,
        y,
        mean: nat_ratio(&sum_f, y),
        sum_f,
        k: params.as_ref().map(|p| p.k),
        s: params.as_ref().map(|p| p.s),
        a: params.as_ref().map(|p| p.a),
        b: params.as_ref().map(|p| p.b),
        s_ab: params.as_ref().map(|p| p.s_ab),
        bound_main_term: bound_main_term(ln_y),
        in_asymptotic_regime: ln_y > ASYMPTOTIC_THRESHOLD_LN,
    })
}

fn nat_ratio(sum: &BigNat, y: u64) -> f64 {
    match u128::try_from(sum) {
        Ok(v) => v as f64 / y as f64,
        Err(_) => (ln_nat(sum) - (y as f64).ln()).exp(),
    }
}
