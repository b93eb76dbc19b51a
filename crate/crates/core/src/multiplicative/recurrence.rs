use num_integer::Integer;
use num_traits::{One, Zero};

use super::SignatureCache;
use crate::arith::PrimeSignature;
use crate::BigNat;

/// `f(n₀)` for the signature, served from and written back to `cache`.
///
/// Uses the logarithmic derivative of `Π_{v≠0} 1/(1 - x^v)`, the generating
/// function of multiset partitions, summed over all coordinates:
///
/// `Ω(a) · P(a) = Σ_{0 < w <= a} |w| · (Σ_{t | gcd(w)} 1/t) · P(a - w)`.
///
/// The summand is symmetric under permuting coordinates with equal exponents,
/// so sub-vectors `w` are enumerated as one multiset per run of equal
/// exponents, weighted by the number of arrangements. Every `P(a - w)` is
/// again the count for a signature, so the computation stays inside the
/// signature-keyed cache.
pub fn f_of_signature(sig: &PrimeSignature, cache: &mut SignatureCache) -> BigNat {
    if let Some(v) = cache.get(sig) {
        let v = v.clone();
        cache.record_hit();
        return v;
    }
    cache.record_miss();
    compute(sig.exponents(), cache)
}

fn lookup_or_compute(exps: Vec<u32>, cache: &mut SignatureCache) -> BigNat {
    let key = PrimeSignature::from_unsorted(exps);
    if let Some(v) = cache.get(&key) {
        return v.clone();
    }
    compute(key.exponents(), cache)
}

/// Non-increasing tuples of `len` values in `0..=max`, each with its number
/// of distinct arrangements.
fn run_choices(len: usize, max: u32) -> Vec<(Vec<u32>, BigNat)> {
    fn go(len: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=cap {
            prefix.push(v);
            go(len, v, prefix, out);
            prefix.pop();
        }
    }
    let mut tuples = Vec::new();
    go(len, max, &mut Vec::with_capacity(len), &mut tuples);
    tuples
        .into_iter()
        .map(|t| {
            // multinomial len! / Π (multiplicity)!, as a product of binomials
            let mut weight = BigNat::one();
            let mut placed = 0u64;
            for group in t.chunk_by(|x, y| x == y) {
                for i in 1..=group.len() as u64 {
                    weight = weight * (placed + i) / i;
                }
                placed += group.len() as u64;
            }
            (t, weight)
        })
        .collect()
}

fn compute(a: &[u32], cache: &mut SignatureCache) -> BigNat {
    if a.is_empty() {
        let one = BigNat::one();
        cache.insert_trusted(PrimeSignature::default(), one.clone());
        return one;
    }
    let runs: Vec<(u32, usize)> = a.chunk_by(|x, y| x == y).map(|g| (g[0], g.len())).collect();
    let choices: Vec<Vec<(Vec<u32>, BigNat)>> = runs.iter().map(|&(e, len)| run_choices(len, e)).collect();

    let mut pick = vec![0usize; runs.len()];
    let mut total = BigNat::zero();
    loop {
        let mut size = 0u32;
        let mut g = 0u32;
        let mut weight = BigNat::one();
        let mut rest = Vec::with_capacity(a.len());
        for (r, &c) in pick.iter().enumerate() {
            let (tuple, w) = &choices[r][c];
            weight *= w;
            for &v in tuple {
                size += v;
                g = g.gcd(&v);
                rest.push(runs[r].0 - v);
            }
        }
        if size > 0 {
            let coeff: u64 = (1..=g).filter(|t| g.is_multiple_of(*t)).map(|t| (size / t) as u64).sum();
            total += lookup_or_compute(rest, cache) * weight * coeff;
        }

        let mut r = runs.len();
        loop {
            if r == 0 {
                let (q, rem) = total.div_rem(&BigNat::from(a.iter().sum::<u32>()));
                debug_assert!(rem.is_zero());
                let sig = PrimeSignature::new(a.to_vec()).expect("sorted signature");
                cache.insert_trusted(sig, q.clone());
                return q;
            }
            r -= 1;
            if pick[r] + 1 < choices[r].len() {
                pick[r] += 1;
                break;
            }
            pick[r] = 0;
        }
    }
}
