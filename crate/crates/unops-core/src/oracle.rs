//! Brute-force classical references for the unoperation devices.
//!
//! These enumerations are the ground truth the quantum circuits are tested
//! against. They share result types with [`crate::unadd`] and
//! [`crate::unmult`] but contain no circuit logic of their own.

use alloc::collections::BTreeSet;

use crate::unadd::Triple;
use crate::unmult::FactorPair;

/// Output of a classical one-bit full adder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdderResult {
    pub sum_bit: u8,
    pub carry_out: u8,
}

/// One-bit full adder: `a + b + c_in = sum_bit + 2 * carry_out`.
pub fn full_adder(a: u8, b: u8, c_in: u8) -> AdderResult {
    debug_assert!(a <= 1 && b <= 1 && c_in <= 1);
    let total = a + b + c_in;
    AdderResult {
        sum_bit: total & 1,
        carry_out: total >> 1,
    }
}

/// All `(a, b, c_in)` with `a, b < 2^n_bits`, `c_in` a bit and
/// `a + b + c_in = sum_value`.
///
/// Runs in `O(sum_value)`: for each carry the feasible `a` range is
/// computed directly instead of scanning the full square.
pub fn unadd_oracle(sum_value: u64, n_bits: u32) -> BTreeSet<Triple> {
    let max = (1u64 << n_bits) - 1;
    let mut triples = BTreeSet::new();
    for c_in in 0..=1u64 {
        let Some(rest) = sum_value.checked_sub(c_in) else {
            continue;
        };
        if rest > 2 * max {
            continue;
        }
        let lo = rest.saturating_sub(max);
        let hi = rest.min(max);
        for a in lo..=hi {
            triples.insert(Triple {
                a,
                b: rest - a,
                c_in: c_in as u8,
            });
        }
    }
    triples
}

/// All `(x, y)` with `x, y < 2^n_bits` and `x * y = product`.
///
/// Runs in `O(2^n_bits)` by scanning candidate `x` values.
pub fn factor_pairs_oracle(product: u64, n_bits: u32) -> BTreeSet<FactorPair> {
    let bound = 1u64 << n_bits;
    let mut pairs = BTreeSet::new();
    for x in 0..bound {
        if x == 0 {
            if product == 0 {
                for y in 0..bound {
                    pairs.insert(FactorPair { x: 0, y });
                    pairs.insert(FactorPair { x: y, y: 0 });
                }
            }
            continue;
        }
        if product.is_multiple_of(x) {
            let y = product / x;
            if y < bound {
                pairs.insert(FactorPair { x, y });
            }
        }
    }
    pairs
}
