//! Exact computation of `f(n)`, the number of ways to write `n` as an
//! unordered product of factors greater than one, together with the
//! partition, Bell and Stirling tables it is tied to and a harness that
//! measures the growth statements made about it.
//!
//! Conventions: `f(1) = 1` (the empty product), and all exact counts are
//! [`BigNat`]s.

// Float checks are written `!(a >= b)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod harness;
pub mod multiplicative;
pub mod partitions;

pub use error::{Error, Result};

/// Arbitrary-precision natural number used for every exact count.
pub type BigNat = num_bigint::BigUint;

/// Natural logarithm of a big natural; `-inf` for zero.
pub fn ln_nat(n: &BigNat) -> f64 {
    use num_traits::ToPrimitive;
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
