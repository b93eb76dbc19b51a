use std::f64::consts::E;

use num_integer::Roots;

use crate::error::{Error, Result};

/// Largest upper endpoint accepted by the range sieves.
pub const MAX_RANGE_PRIME: u64 = 100_000_000_000;

const SEGMENT: u64 = 1 << 18;

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    // p_k < k (ln k + ln ln k) for k >= 6
    let kf = k as f64;
    let bound = if k < 6 { 15 } else { (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 1 };
    let mut primes = simple_sieve(bound);
    primes.truncate(k);
    primes
}

/// Integer endpoints `[lo, hi]` for a real interval, `lo` clamped to 2.
/// `None` means the interval holds no integer >= 2.
fn integer_window(a: f64, b: f64) -> Result<Option<(u64, u64)>> {
    if a.is_nan() || b.is_nan() || a == f64::INFINITY || b == f64::NEG_INFINITY {
        return Err(Error::domain(format!("invalid range [{a}, {b}]")));
    }
    if a > b {
        return Err(Error::domain(format!("empty range: {a} > {b}")));
    }
    if b < 2.0 {
        return Ok(None);
    }
    if b > MAX_RANGE_PRIME as f64 {
        return Err(Error::resource(format!("range endpoint {b} exceeds the sieve cap {MAX_RANGE_PRIME}")));
    }
    let lo = a.ceil().max(2.0) as u64;
    let hi = b.floor() as u64;
    Ok((lo <= hi).then_some((lo, hi)))
}

/// Calls `visit` with each prime in `[lo, hi]`, ascending, via a segmented
/// sieve of Eratosthenes.
pub fn for_each_prime_in_range(lo: u64, hi: u64, mut visit: impl FnMut(u64)) -> Result<()> {
    if hi > MAX_RANGE_PRIME {
        return Err(Error::resource(format!("{hi} exceeds the sieve cap {MAX_RANGE_PRIME}")));
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(());
    }
    let base = simple_sieve(hi.sqrt());
    let mut mark = vec![false; SEGMENT as usize];
    let mut start = lo;
    while start <= hi {
        let end = (start + SEGMENT - 1).min(hi);
        let len = (end - start + 1) as usize;
        mark[..len].fill(true);
        for &p in &base {
            if p * p > end {
                break;
            }
            let first = (p * p).max(start.div_ceil(p) * p);
            let mut m = first;
            while m <= end {
                mark[(m - start) as usize] = false;
                m += p;
            }
        }
        for (i, &is_p) in mark[..len].iter().enumerate() {
            if is_p {
                visit(start + i as u64);
            }
        }
        start = end + 1;
    }
    Ok(())
}

/// All primes `p` with `a <= p <= b`, ascending. An upper endpoint below 2
/// gives the empty list; `a` below 2 is treated as 2.
pub fn primes_in_range(a: f64, b: f64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    if let Some((lo, hi)) = integer_window(a, b)? {
        for_each_prime_in_range(lo, hi, |p| out.push(p))?;
    }
    Ok(out)
}

/// `S_{A,B} = Σ_{A <= p <= B} 1/p`, accumulated with Neumaier's compensated
/// summation in ascending order of `p`.
pub fn prime_reciprocal_sum(a: f64, b: f64) -> Result<f64> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    if let Some((lo, hi)) = integer_window(a, b)? {
        for_each_prime_in_range(lo, hi, |p| {
            let x = 1.0 / p as f64;
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
        })?;
    }
    Ok(sum + comp)
}

/// `log log B - log log A`, the Mertens approximation to [`prime_reciprocal_sum`].
pub fn mertens_gap_estimate(a: f64, b: f64) -> Result<f64> {
    if !(a > E) || !a.is_finite() {
        return Err(Error::domain(format!("log log A is not positive for A = {a}")));
    }
    if !(b >= a) {
        return Err(Error::domain(format!("B = {b} is below A = {a}")));
    }
    Ok(b.ln().ln() - a.ln().ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_examples() {
        assert_eq!(primes_in_range(2.0, 10.0).unwrap(), vec![2, 3, 5, 7]);
        assert!(primes_in_range(4.0, 4.0).unwrap().is_empty());
        assert_eq!(primes_in_range(10.0, 30.0).unwrap(), vec![11, 13, 17, 19, 23, 29]);
        assert!(primes_in_range(0.5, 1.5).unwrap().is_empty());
        assert_eq!(primes_in_range(1.0, 4.64).unwrap(), vec![2, 3]);
        assert!(primes_in_range(5.0, 3.0).is_err());
        assert!(primes_in_range(f64::NAN, 3.0).is_err());
        assert!(matches!(primes_in_range(2.0, 1e12), Err(Error::Resource(_))));
    }

    #[test]
    fn segmented_sieve_matches_miller_rabin() {
        let mut got = Vec::new();
        for_each_prime_in_range(999_000, 1_600_000, |p| got.push(p)).unwrap();
        let want: Vec<u64> = (999_000..=1_600_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn miller_rabin_small() {
        let sieve = simple_sieve(10_000);
        let mr: Vec<u64> = (0..=10_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn first_primes_examples() {
        assert_eq!(first_primes(0), Vec::<u64>::new());
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
        assert_eq!(first_primes(1000).last(), Some(&7919));
    }

    #[test]
    fn reciprocal_sum_examples() {
        let s = prime_reciprocal_sum(2.0, 10.0).unwrap();
        assert!((s - (1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 5.0 + 1.0 / 7.0)).abs() < 1e-15);
        assert!((s - 1.17619).abs() < 1e-5);
        assert_eq!(prime_reciprocal_sum(4.0, 4.0).unwrap(), 0.0);

        // Direct summation oracle, then the Mertens cross-check.
        let direct: f64 = (100..=10_000u64).filter(|&n| is_prime_u64(n)).map(|p| 1.0 / p as f64).sum();
        let s = prime_reciprocal_sum(100.0, 10_000.0).unwrap();
        assert!((s - direct).abs() < 1e-12);
        let gap = mertens_gap_estimate(100.0, 10_000.0).unwrap();
        assert!((s - gap).abs() <= 2.0 / 100f64.ln());
    }

    #[test]
    fn reciprocal_sum_is_additive() {
        for &(a, b, c) in &[(2.0, 97.0, 1000.0), (100.0, 7919.0, 50_000.0), (36.0, 1000.0, 22_275.0)] {
            let next = primes_in_range(b + 1.0, c).unwrap()[0] as f64;
            let left = prime_reciprocal_sum(a, b).unwrap();
            let right = prime_reciprocal_sum(next, c).unwrap();
            let whole = prime_reciprocal_sum(a, c).unwrap();
            assert!((left + right - whole).abs() <= 1e-12);
        }
    }

    #[test]
    fn mertens_examples() {
        assert_eq!(mertens_gap_estimate(50.0, 50.0).unwrap(), 0.0);
        let v = mertens_gap_estimate(100.0, 10_000.0).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12); // log log 10^4 - log log 10^2 = log 2
        let v = mertens_gap_estimate(16.0, 256.0).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12);
        assert!(matches!(mertens_gap_estimate(E, 10.0), Err(Error::Domain(_))));
        assert!(matches!(mertens_gap_estimate(2.0, 10.0), Err(Error::Domain(_))));
    }

    #[test]
    fn mertens_error_constant() {
        let mut worst = 0.0f64;
        for &a in &[100.0, 300.0, 1000.0, 5000.0, 20_000.0] {
            for &b in &[a, a * 10.0, a * 1000.0, 1e7] {
                if b < a {
                    continue;
                }
                let s = prime_reciprocal_sum(a, b).unwrap();
                let g = mertens_gap_estimate(a, b).unwrap();
                let scaled = (s - g).abs() * a.ln();
                worst = worst.max(scaled);
                assert!(scaled <= 2.0, "A={a} B={b}: |S - gap| log A = {scaled}");
            }
        }
        assert!(worst > 0.0);
    }
}
