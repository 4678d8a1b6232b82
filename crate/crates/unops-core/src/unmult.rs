//! Unmultiplier builder, post-processing filter and the unmultiplication
//! entry point.
//!
//! An n-bit unmultiplier chains n Ripple-Carry-Unadders so that stage i
//! peels the partial product `x · y_i` back off the running remainder,
//! mirroring a shift-and-add multiplier run in reverse. Each stage's
//! ancilla block is an x-register candidate; a feedback X gate records in
//! `y_i` whether that stage contributed (x-register nonzero). The device
//! also produces branches that no multiplication could have generated;
//! [`postprocess`] filters them out classically.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qsim::{
    Backend, Circuit, ClassicalLayout, Control, Gate, SPARSE_WIRE_LIMIT, SUPPORT_TOL,
};
use crate::unadd::{append_rcu_gates, RunMode};

/// One factorization outcome; satisfies `x · y = product` for the queried
/// product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorPair {
    pub x: u64,
    pub y: u64,
}

/// Wire map of a built unmultiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnmultLayout {
    n_bits: u32,
    product_wires: Vec<usize>,
    x_register_wires: Vec<Vec<usize>>,
    y_wires: Vec<usize>,
}

impl UnmultLayout {
    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    /// The 2n wires holding the product, MSB first.
    pub fn product_wires(&self) -> &[usize] {
        &self.product_wires
    }

    /// Per-stage ancilla blocks that end up holding the x candidates.
    pub fn x_register_wires(&self) -> &[Vec<usize>] {
        &self.x_register_wires
    }

    /// Feedback wires holding y, MSB first.
    pub fn y_wires(&self) -> &[usize] {
        &self.y_wires
    }

    /// `n² + 3n`.
    pub fn total_wires(&self) -> usize {
        let n = self.n_bits as usize;
        n * n + 3 * n
    }
}

/// Decoded classical registers of one measured or enumerated outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawOutcome {
    /// Final carry bit of each RCU stage.
    pub c_in_x: Vec<u8>,
    /// Value of each x-register.
    pub x: Vec<u64>,
    /// Feedback register.
    pub y: u64,
    /// The last stage's b output; zero on every valid branch.
    pub const0: u64,
}

impl RawOutcome {
    /// Splits a register-ordered value list (as produced by the built
    /// circuit's layout) into its named parts.
    pub fn from_register_values(values: &[u64], n_bits: u32) -> Self {
        let n = n_bits as usize;
        debug_assert_eq!(values.len(), 2 * n + 2);
        RawOutcome {
            c_in_x: values[..n].iter().map(|&v| v as u8).collect(),
            x: values[n..2 * n].to_vec(),
            y: values[2 * n],
            const0: values[2 * n + 1],
        }
    }
}

/// First post-processing predicate an outcome failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RejectReason {
    /// The last stage left a nonzero remainder.
    Const0Nonzero,
    /// Some stage's carry bit came out 1.
    CarryNonzero,
    /// Two nonzero x-registers disagree.
    InconsistentX,
}

/// Classical filter verdict for one outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Postselection {
    Accept(FactorPair),
    Reject(RejectReason),
}

/// Applies the acceptance predicates in order: zero remainder, zero
/// carries, consistent x-registers. On acceptance x is the common nonzero
/// x-register value (0 if all are zero) and y the feedback register.
pub fn postprocess(outcome: &RawOutcome, n_bits: u32) -> Postselection {
    let n = n_bits as usize;
    debug_assert_eq!(outcome.c_in_x.len(), n);
    debug_assert_eq!(outcome.x.len(), n);
    if outcome.const0 != 0 {
        return Postselection::Reject(RejectReason::Const0Nonzero);
    }
    if outcome.c_in_x.iter().any(|&c| c != 0) {
        return Postselection::Reject(RejectReason::CarryNonzero);
    }
    let mut common = 0u64;
    for &x in &outcome.x {
        if x == 0 {
            continue;
        }
        if common == 0 {
            common = x;
        } else if x != common {
            return Postselection::Reject(RejectReason::InconsistentX);
        }
    }
    Postselection::Accept(FactorPair {
        x: common,
        y: outcome.y,
    })
}

/// Builds the n-bit unmultiplier for `product` on `n² + 3n` wires.
///
/// Wires 0..2n hold the X-prepared product MSB-first. Stage i reuses wire
/// i as its carry input (p_0 for the first stage, afterwards the previous
/// stage's b MSB), wires i+1..=i+n as its sum input (previous b bits plus
/// the next product bit) and x-register i as ancillas. Around each stage
/// the feedback pair runs: X sets `y_i`, then an all-negative-controlled X
/// on x-register i clears it again when the stage contributed nothing.
pub fn build_unmultiplier(n_bits: u32, product: u64) -> Result<(Circuit, UnmultLayout)> {
    if n_bits == 0 {
        return Err(Error::ZeroWidth);
    }
    let n = n_bits as usize;
    let num_wires = n * n + 3 * n;
    if num_wires > SPARSE_WIRE_LIMIT {
        return Err(Error::TooManyWires {
            num_wires,
            max: SPARSE_WIRE_LIMIT,
            backend: "sparse",
        });
    }
    if product >> (2 * n_bits) != 0 {
        return Err(Error::ValueOutOfRange {
            value: product,
            bits: 2 * n_bits,
        });
    }

    let x_registers: Vec<Vec<usize>> = (0..n)
        .map(|i| (2 * n + i * n..2 * n + (i + 1) * n).collect())
        .collect();
    let y_wires: Vec<usize> = (2 * n + n * n..2 * n + n * n + n).collect();

    let mut circuit = Circuit::new(num_wires);
    for k in 0..2 * n {
        if product >> (2 * n - 1 - k) & 1 == 1 {
            circuit.push(Gate::x(k))?;
        }
    }
    for i in 0..n {
        let sums: Vec<usize> = (i + 1..=i + n).collect();
        circuit.push(Gate::x(y_wires[i]))?;
        append_rcu_gates(&mut circuit, i, &sums, &x_registers[i])?;
        let controls: Vec<Control> = x_registers[i]
            .iter()
            .map(|&w| Control::negative(w))
            .collect();
        circuit.push(Gate::mcx(&controls, y_wires[i])?)?;
    }

    let mut layout = ClassicalLayout::new();
    for i in 0..n {
        layout.add_register(format!("c_in_x{i}"), vec![i])?;
    }
    for (i, wires) in x_registers.iter().enumerate() {
        layout.add_register(format!("x{i}"), wires.clone())?;
    }
    layout.add_register("y", y_wires.clone())?;
    layout.add_register("const0", (n..2 * n).collect())?;
    circuit.set_layout(layout)?;

    let unmult_layout = UnmultLayout {
        n_bits,
        product_wires: (0..2 * n).collect(),
        x_register_wires: x_registers,
        y_wires,
    };
    Ok((circuit, unmult_layout))
}

/// Outcome payload of [`unmultiply`].
#[derive(Clone, Debug, PartialEq)]
pub enum UnmultOutcomes {
    Exact {
        /// Probability mass per accepted pair.
        pair_masses: BTreeMap<FactorPair, f64>,
        /// Probability mass per rejection predicate.
        rejection_masses: BTreeMap<RejectReason, f64>,
    },
    Sampled {
        pair_counts: BTreeMap<FactorPair, u64>,
        rejection_counts: BTreeMap<RejectReason, u64>,
        shots: u64,
    },
}

/// Result of one unmultiplication run.
#[derive(Clone, Debug, PartialEq)]
pub struct Unmultiplication {
    pub product: u64,
    pub n_bits: u32,
    pub outcomes: UnmultOutcomes,
}

impl Unmultiplication {
    /// Distinct accepted factor pairs.
    pub fn pairs(&self) -> BTreeSet<FactorPair> {
        match &self.outcomes {
            UnmultOutcomes::Exact { pair_masses, .. } => pair_masses.keys().copied().collect(),
            UnmultOutcomes::Sampled { pair_counts, .. } => pair_counts.keys().copied().collect(),
        }
    }

    /// Fraction of outcome mass (or shots) surviving post-processing.
    pub fn post_selection_probability(&self) -> f64 {
        match &self.outcomes {
            UnmultOutcomes::Exact {
                pair_masses,
                rejection_masses,
            } => {
                let accepted: f64 = pair_masses.values().sum();
                let rejected: f64 = rejection_masses.values().sum();
                accepted / (accepted + rejected)
            }
            UnmultOutcomes::Sampled {
                pair_counts, shots, ..
            } => pair_counts.values().sum::<u64>() as f64 / *shots as f64,
        }
    }
}

/// Runs the unmultiplier for `product` and post-processes every outcome.
pub fn unmultiply(
    product: u64,
    n_bits: u32,
    mode: RunMode,
    backend: Backend,
) -> Result<Unmultiplication> {
    let (circuit, _) = build_unmultiplier(n_bits, product)?;
    let state = circuit.run(backend)?;
    let layout = circuit.layout();
    let outcomes = match mode {
        RunMode::Exact => {
            let mut pair_masses = BTreeMap::new();
            let mut rejection_masses = BTreeMap::new();
            for (basis, amp) in state.support(SUPPORT_TOL) {
                let outcome = RawOutcome::from_register_values(&layout.decode(basis), n_bits);
                match postprocess(&outcome, n_bits) {
                    Postselection::Accept(pair) => {
                        *pair_masses.entry(pair).or_insert(0.0) += amp.norm_sqr()
                    }
                    Postselection::Reject(reason) => {
                        *rejection_masses.entry(reason).or_insert(0.0) += amp.norm_sqr()
                    }
                }
            }
            UnmultOutcomes::Exact {
                pair_masses,
                rejection_masses,
            }
        }
        RunMode::Sample { shots, seed } => {
            let sampled = state.sample(layout, shots, seed)?;
            let mut pair_counts = BTreeMap::new();
            let mut rejection_counts = BTreeMap::new();
            for (values, &count) in sampled.counts() {
                let outcome = RawOutcome::from_register_values(values, n_bits);
                match postprocess(&outcome, n_bits) {
                    Postselection::Accept(pair) => *pair_counts.entry(pair).or_insert(0) += count,
                    Postselection::Reject(reason) => {
                        *rejection_counts.entry(reason).or_insert(0) += count
                    }
                }
            }
            UnmultOutcomes::Sampled {
                pair_counts,
                rejection_counts,
                shots,
            }
        }
    };
    Ok(Unmultiplication {
        product,
        n_bits,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::factor_pairs_oracle;

    fn outcome(c_in_x: &[u8], x: &[u64], y: u64, const0: u64) -> RawOutcome {
        RawOutcome {
            c_in_x: c_in_x.to_vec(),
            x: x.to_vec(),
            y,
            const0,
        }
    }

    #[test]
    fn wire_count_is_n_squared_plus_three_n() {
        for (n, expect) in [(1u32, 4usize), (2, 10), (3, 18), (4, 28)] {
            let (circuit, layout) = build_unmultiplier(n, 0).unwrap();
            assert_eq!(circuit.num_wires(), expect);
            assert_eq!(layout.total_wires(), expect);
        }
    }

    #[test]
    fn builder_rejects_bad_inputs() {
        assert!(matches!(build_unmultiplier(0, 0), Err(Error::ZeroWidth)));
        assert!(matches!(
            build_unmultiplier(2, 16),
            Err(Error::ValueOutOfRange { .. })
        ));
        assert!(matches!(
            build_unmultiplier(7, 0),
            Err(Error::TooManyWires { .. })
        ));
    }

    #[test]
    fn postprocess_accepts_consistent_outcome() {
        let verdict = postprocess(&outcome(&[0, 0, 0], &[3, 3, 0], 2, 0), 3);
        assert_eq!(verdict, Postselection::Accept(FactorPair { x: 3, y: 2 }));
    }

    #[test]
    fn postprocess_accepts_all_zero_x() {
        let verdict = postprocess(&outcome(&[0, 0], &[0, 0], 0, 0), 2);
        assert_eq!(verdict, Postselection::Accept(FactorPair { x: 0, y: 0 }));
    }

    #[test]
    fn postprocess_rejects_in_predicate_order() {
        let verdict = postprocess(&outcome(&[0, 0, 0], &[3, 3, 0], 2, 1), 3);
        assert_eq!(verdict, Postselection::Reject(RejectReason::Const0Nonzero));
        // remainder check comes before the carry check
        let verdict = postprocess(&outcome(&[1, 0, 0], &[3, 3, 0], 2, 1), 3);
        assert_eq!(verdict, Postselection::Reject(RejectReason::Const0Nonzero));
        let verdict = postprocess(&outcome(&[1, 0, 0], &[3, 3, 0], 2, 0), 3);
        assert_eq!(verdict, Postselection::Reject(RejectReason::CarryNonzero));
        let verdict = postprocess(&outcome(&[0, 0, 0], &[3, 5, 0], 2, 0), 3);
        assert_eq!(verdict, Postselection::Reject(RejectReason::InconsistentX));
    }

    #[test]
    fn smallest_instance_factors_one() {
        let run = unmultiply(1, 1, RunMode::Exact, Backend::Dense).unwrap();
        let expect: BTreeSet<FactorPair> = [FactorPair { x: 1, y: 1 }].into_iter().collect();
        assert_eq!(run.pairs(), expect);
        let p = run.post_selection_probability();
        assert!(p > 0.0 && p <= 1.0, "post-selection probability {p}");
    }

    #[test]
    fn two_bit_products_match_oracle() {
        for product in 1..16u64 {
            let run = unmultiply(product, 2, RunMode::Exact, Backend::Sparse).unwrap();
            assert_eq!(
                run.pairs(),
                factor_pairs_oracle(product, 2),
                "product {product}"
            );
        }
    }

    #[test]
    fn zero_product_is_sound() {
        let run = unmultiply(0, 2, RunMode::Exact, Backend::Sparse).unwrap();
        for pair in run.pairs() {
            assert_eq!(pair.x * pair.y, 0);
        }
        assert!(run.pairs().contains(&FactorPair { x: 0, y: 0 }));
    }

    #[test]
    fn six_over_three_bits_matches_frozen_set() {
        let run = unmultiply(6, 3, RunMode::Exact, Backend::Sparse).unwrap();
        let expect: BTreeSet<FactorPair> = [(1, 6), (2, 3), (3, 2), (6, 1)]
            .into_iter()
            .map(|(x, y)| FactorPair { x, y })
            .collect();
        assert_eq!(run.pairs(), expect);
        let UnmultOutcomes::Exact {
            rejection_masses, ..
        } = &run.outcomes
        else {
            panic!("exact mode");
        };
        assert!(
            !rejection_masses.is_empty(),
            "device produces invalid branches"
        );
    }

    #[test]
    fn sampled_pairs_are_sound() {
        let run = unmultiply(
            1,
            1,
            RunMode::Sample {
                shots: 50_000,
                seed: 3,
            },
            Backend::Dense,
        )
        .unwrap();
        for pair in run.pairs() {
            assert_eq!(pair.x * pair.y, 1);
        }
        assert_eq!(run.pairs(), factor_pairs_oracle(1, 1));
        let p = run.post_selection_probability();
        assert!(p > 0.0 && p < 1.0, "post-selection probability {p}");
    }
}
