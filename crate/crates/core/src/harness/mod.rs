//! Desk-scale measurements of the growth statements about `f`: the value
//! set below `x`, the self-dividing integers, short-interval averages, and
//! the explicit inequalities used along the way.

mod interval;
mod lemma4;
mod omega;
mod selfdiv;
mod value_set;

pub use interval::{
    bound_main_term, h_function, h_scan, interval_average, interval_report, thm2_mertens_identity, thm2_parameters,
    thm2_parameters_ln, HScan, IntervalReport, MertensComparison, Thm2Params, ASYMPTOTIC_THRESHOLD_LN,
};
pub use lemma4::{
    enumerate_m, enumerate_m_with_budget, lemma4_check, stirling_power_bound_check,
    stirling_power_bound_check_with_budget, Lemma4Check, StirlingPowerCheck,
};
pub use omega::{omega_distribution, OmegaDistribution};
pub use selfdiv::{count_self_dividing, SelfDividingReport, SelfDividingTally};
pub use value_set::{enumerate_value_set, ValueSetOptions, ValueSetReport};

use crate::partitions::{bell_sequence, partition_table};
use crate::BigNat;

/// `(max{a : p(a) <= x}, max{k : B_k <= x})`.
///
/// Any `n` with `f(n) <= x` has `p(α₁(n)) <= f(n)` and `B_{ω(n)} <= f(n)`
/// (both are values of `f` at divisors of `n₀`), so these caps bound the
/// signature search exactly.
pub fn pruning_bounds(x: &BigNat) -> (u32, u32) {
    let mut size = 16;
    let alpha_max = loop {
        let t = partition_table(size);
        if let Some(a) = t.values().iter().position(|v| v > x) {
            break a as u32 - 1;
        }
        size *= 2;
    };
    let mut size = 16;
    let k_max = loop {
        let b = bell_sequence(size);
        if let Some(k) = b.values().iter().position(|v| v > x) {
            break k as u32 - 1;
        }
        size *= 2;
    };
    (alpha_max, k_max)
}

pub(crate) mod serde_big {
    use num_rational::BigRational;
    use serde::Serializer;

    use crate::BigNat;

    pub fn nat<S: Serializer>(v: &BigNat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn nat_list<S: Serializer>(v: &Option<Vec<BigNat>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(list) => s.collect_seq(list.iter().map(|x| x.to_string())),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pruning_bound_examples() {
        assert_eq!(pruning_bounds(&BigNat::from(1u32)), (1, 1));
        // p(12) = 77, p(13) = 101; B_5 = 52, B_6 = 203.
        assert_eq!(pruning_bounds(&BigNat::from(100u32)), (12, 5));
        // p(61) = 1121505, p(60) = 966467; B_9 = 21147, B_10 = 115975, B_11 = 678570, B_12 = 4213597.
        assert_eq!(pruning_bounds(&BigNat::from(1_000_000u32)), (60, 11));
        let t = partition_table(61);
        assert_eq!(t.values()[60], BigNat::from(966_467u32));
        assert_eq!(t.values()[61], BigNat::from(1_121_505u32));
    }
}
