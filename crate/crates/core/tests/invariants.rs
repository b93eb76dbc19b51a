use factorisatio::arith::{build_spf, factorize, prime_reciprocal_sum, primes_in_range, PrimeSignature};
use factorisatio::harness::{count_self_dividing, enumerate_value_set, omega_distribution, ValueSetOptions};
use factorisatio::multiplicative::{
    bulk_f_range, count_factorizations, f_of_signature, multiset_partition_count, SignatureCache,
};
use factorisatio::partitions::{bell_sequence, stirling_row};
use factorisatio::BigNat;
use proptest::prelude::*;

fn f_of(n: u128, cache: &mut SignatureCache) -> BigNat {
    f_of_signature(&factorize(n, None).unwrap().signature(), cache)
}

fn small_signature() -> impl Strategy<Value = PrimeSignature> {
    prop::collection::vec(1u32..=6, 0..=5).prop_map(PrimeSignature::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn depends_only_on_signature(n in 1u64..2_000_000_000) {
        let mut cache = SignatureCache::new();
        prop_assert_eq!(count_factorizations(n as u128).unwrap(), f_of(n as u128, &mut cache));
    }

    #[test]
    fn never_exceeds_n(n in 1u64..10_000_000) {
        let f = count_factorizations(n as u128).unwrap();
        prop_assert!(f <= BigNat::from(n));
    }

    #[test]
    fn three_routes_agree(sig in small_signature()) {
        let a = f_of_signature(&sig, &mut SignatureCache::new());
        prop_assert_eq!(&a, &multiset_partition_count(&sig).unwrap());
        if let Ok(n0) = u128::try_from(factorisatio::arith::canonical_n0(&sig)) {
            if n0 < 1_000_000_000_000 {
                prop_assert_eq!(a, count_factorizations(n0).unwrap());
            }
        }
    }

    #[test]
    fn extension_never_decreases_f(
        base in prop::collection::vec(1u32..=5, 0..=5),
        bumps in prop::collection::vec(0u32..=2, 0..=6),
    ) {
        let small = PrimeSignature::from_unsorted(base.clone());
        let mut big = base;
        big.resize(big.len().max(bumps.len()), 0);
        for (e, b) in big.iter_mut().zip(&bumps) {
            *e += b;
        }
        let big = PrimeSignature::from_unsorted(big);
        prop_assert!(big.dominates(&small));
        let mut cache = SignatureCache::new();
        prop_assert!(f_of_signature(&big, &mut cache) >= f_of_signature(&small, &mut cache));
    }

    #[test]
    fn cache_text_roundtrip(sigs in prop::collection::vec(small_signature(), 1..6)) {
        let mut cache = SignatureCache::new();
        for s in &sigs {
            f_of_signature(s, &mut cache);
        }
        let text = cache.to_text();
        let back = SignatureCache::from_text(&text, None).unwrap();
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn reciprocal_sum_is_additive(a in 2u64..5000, m in 0u64..5000, b in 0u64..5000) {
        let (a, m, b) = (a as f64, (a + m) as f64, (a + m + b) as f64);
        let whole = prime_reciprocal_sum(a, b).unwrap();
        let split = prime_reciprocal_sum(a, m).unwrap() + prime_reciprocal_sum(m + 1.0, b).unwrap();
        prop_assert!((whole - split).abs() <= 1e-12 * whole.max(1.0));
    }
}

#[test]
fn bulk_matches_pointwise() {
    let table = build_spf(300_000).unwrap();
    let mut cache = SignatureCache::new();
    let mut bulk = bulk_f_range(200_001, 300_000, &table, &mut cache, 3).unwrap();
    let mut scratch = SignatureCache::new();
    let mut n_seen = 0;
    while let Some(block) = bulk.next_block() {
        for (n, f) in block.iter().step_by(97) {
            assert_eq!(BigNat::from(f), f_of(n as u128, &mut scratch), "n = {n}");
            n_seen += 1;
        }
    }
    assert!(n_seen > 1000);
}

#[test]
fn bell_is_stirling_row_sum() {
    let b = bell_sequence(60);
    for k in 1..=60 {
        assert_eq!(b.values()[k], stirling_row(k).unwrap().sum(), "k = {k}");
    }
}

#[test]
fn value_set_shape() {
    for x in [1u32, 2, 7, 50, 300] {
        let r = enumerate_value_set(&BigNat::from(x), ValueSetOptions { retain_values: true, ..Default::default() });
        let values = r.values.unwrap();
        assert_eq!(r.count as usize, values.len());
        assert_eq!(values[0], BigNat::from(1u32));
        assert!(values.windows(2).all(|w| w[0] < w[1]));
        assert!(values.iter().all(|v| *v <= BigNat::from(x)));
    }
}

#[test]
fn self_dividing_counts_cover_primes() {
    let table = build_spf(50_000).unwrap();
    let mut cache = SignatureCache::new();
    for x in [2u64, 3, 97, 1000, 49_999] {
        let r = count_self_dividing(x, &table, &mut cache, 2).unwrap();
        assert!(r.count >= primes_in_range(2.0, x as f64).unwrap().len() as u64, "x = {x}");
        assert_eq!(r.omega_histogram.values().sum::<u64>(), r.count);
    }
}

#[test]
fn omega_histograms_conserve() {
    let table = build_spf(100_000).unwrap();
    for x in [2u64, 10, 1234, 100_000] {
        let d = omega_distribution(x, &table).unwrap();
        assert_eq!(d.omega.values().sum::<u64>(), x - 1);
        assert_eq!(d.big_omega.values().sum::<u64>(), x - 1);
    }
}
