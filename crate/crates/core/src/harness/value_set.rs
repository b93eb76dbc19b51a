use std::collections::BTreeSet;

use serde::Serialize;

use super::pruning_bounds;
use super::serde_big;
use crate::arith::PrimeSignature;
use crate::multiplicative::{f_of_signature, SignatureCache};
use crate::{ln_nat, BigNat};

#[derive(Debug, Clone, Copy)]
pub struct ValueSetOptions {
    /// Maximum number of signatures evaluated before giving up.
    pub node_budget: u64,
    /// Keep the sorted list of values in the report.
    pub retain_values: bool,
}

impl Default for ValueSetOptions {
    fn default() -> Self {
        ValueSetOptions { node_budget: 100_000_000, retain_values: false }
    }
}

/// The distinct values `f(m) <= x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueSetReport {
    #[serde(serialize_with = "serde_big::nat")]
    pub x: BigNat,
    pub count: u64,
    #[serde(serialize_with = "serde_big::nat_list", skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<BigNat>>,
    /// `log(count) · log log x / (log x · log log log x)`; undefined for `x <= e^e`.
    pub exponent_profile: Option<f64>,
    pub nodes_visited: u64,
    pub nodes_pruned: u64,
    /// False when the node budget ran out and `count` is only a lower bound.
    pub exact: bool,
}

/// Depth-first search of the signature lattice.
///
/// Every non-increasing signature has exactly one parent: drop a trailing 1,
/// or else decrement the last exponent. Children are therefore "increment the
/// last exponent" (when that keeps the order) and "append a 1". Both dominate
/// the parent, and `f` is monotone under domination, so a node with
/// `f > x` cuts its whole subtree. Depth and first exponent are further capped
/// by [`pruning_bounds`].
///
/// If the budget is exhausted the report comes back with `exact = false`.
pub fn enumerate_value_set(x: &BigNat, opts: ValueSetOptions) -> ValueSetReport {
    let (alpha_max, k_max) = pruning_bounds(x);
    let mut cache = SignatureCache::new();
    let mut values = BTreeSet::new();
    let mut visited = 0u64;
    let mut pruned = 0u64;
    let mut exact = true;
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];

    while let Some(exps) = stack.pop() {
        if visited >= opts.node_budget {
            exact = false;
            break;
        }
        visited += 1;
        let sig = PrimeSignature::new(exps).expect("lattice nodes stay sorted");
        let f = f_of_signature(&sig, &mut cache);
        if f > *x {
            pruned += 1;
            continue;
        }
        values.insert(f);

        let exps = sig.into_exponents();
        let len = exps.len();
        if len < k_max as usize {
            let mut child = exps.clone();
            child.push(1);
            stack.push(child);
        } else {
            pruned += 1;
        }
        if len >= 1 && (len == 1 || exps[len - 2] > exps[len - 1]) {
            if len == 1 && exps[0] >= alpha_max {
                pruned += 1;
            } else {
                let mut child = exps;
                child[len - 1] += 1;
                stack.push(child);
            }
        }
    }

    let count = values.len() as u64;
    ValueSetReport {
        x: x.clone(),
        count,
        values: opts.retain_values.then(|| values.into_iter().collect()),
        exponent_profile: exponent_profile(count, ln_nat(x)),
        nodes_visited: visited,
        nodes_pruned: pruned,
        exact,
    }
}

fn exponent_profile(count: u64, ln_x: f64) -> Option<f64> {
    let lll = ln_x.ln().ln();
    (lll > 0.0 && count > 0).then(|| (count as f64).ln() * ln_x.ln() / (ln_x * lll))
}
