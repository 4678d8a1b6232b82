//! Full-unadder and Ripple-Carry-Unadder builders and the unaddition
//! entry point.
//!
//! A full-unadder inverts a one-bit full adder: fed a carry-out and sum
//! bit, it branches into every (c_in, b, a) input that the adder would
//! have mapped there, with equal probability inside each branch. Chaining
//! one per bit yields the Ripple-Carry-Unadder (RCU), whose final support
//! is exactly the set of triples with `a + b + c_in = sum`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::qsim::{
    Backend, Circuit, ClassicalLayout, Control, Gate, SPARSE_WIRE_LIMIT, SUPPORT_TOL,
};

/// One unaddition outcome; satisfies `a + b + c_in = sum` for the queried
/// sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: u64,
    pub b: u64,
    pub c_in: u8,
}

/// Readout strategy for a device run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    /// Decode the full support of the final state.
    Exact,
    /// Draw seeded measurement shots from the final state.
    Sample { shots: u64, seed: u64 },
}

/// Rotation angle `2·arccos√(2/3)` that splits one branch off with
/// probability 1/3.
pub fn full_unadder_angle() -> f64 {
    2.0 * (2.0_f64 / 3.0).sqrt().acos()
}

/// One `(c_out, sum)` input paired with its `(c_in, b, a)` outputs.
pub type BranchRow = ((u8, u8), &'static [(u8, u8, u8)]);

/// The full-unadder branch table.
///
/// For each `(c_out, sum)` input, the set of `(c_in, b, a)` outputs; every
/// listed output carries probability `1 / len` and nothing else appears.
pub fn full_unadder_branches() -> [BranchRow; 4] {
    [
        ((0, 0), &[(0, 0, 0)]),
        ((0, 1), &[(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        ((1, 0), &[(0, 1, 1), (1, 0, 1), (1, 1, 0)]),
        ((1, 1), &[(1, 1, 1)]),
    ]
}

/// The 8×8 full-unadder unitary, row-major.
///
/// Input basis index is `4·c_out + 2·sum + ancilla`, output basis index is
/// `4·c_in + 2·b + a`. Columns 0 and 6 are the deterministic truth-table
/// rows; columns 2 and 4 hold the two three-way branches at amplitude
/// `1/√3`. The remaining columns only pad the map to a unitary and are
/// never reached from a |0⟩ ancilla.
pub fn full_unadder_matrix() -> Vec<Complex64> {
    let r2 = 2.0_f64.sqrt();
    let r3 = 3.0_f64.sqrt();
    let r6 = 6.0_f64.sqrt();
    let rows: [[f64; 8]; 8] = [
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0 / r2, 1.0 / r3, -1.0 / r6, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0 / r2, 1.0 / r3, -1.0 / r6, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0 / r3, 1.0 / r2, 0.0, -1.0 / r6],
        [0.0, 0.0, 1.0 / r3, 2.0 / r6, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0 / r3, -1.0 / r2, 0.0, -1.0 / r6],
        [0.0, 0.0, 0.0, 0.0, 1.0 / r3, 0.0, 0.0, 2.0 / r6],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
    ];
    rows.iter()
        .flatten()
        .map(|&x| Complex64::new(x, 0.0))
        .collect()
}

/// The full-unadder as one 3-wire gate on `(carry, sum, ancilla)`.
///
/// The carry wire enters holding `c_out` and leaves holding `c_in`; the
/// sum wire enters holding a sum bit and leaves holding `b`; the ancilla
/// must enter as |0⟩ and leaves holding `a`.
pub fn full_unadder_gate(carry: usize, sum: usize, ancilla: usize) -> Result<Gate> {
    Gate::new(full_unadder_matrix(), vec![carry, sum, ancilla])
}

/// Initial basis state loading `(c_out, sum)` into a circuit built by
/// [`build_full_unadder_circuit`] or
/// [`build_optimised_full_unadder_circuit`].
pub fn unadder_input(circuit: &Circuit, c_out: u8, sum: u8) -> u64 {
    let n = circuit.num_wires();
    ((c_out as u64) << (n - 1)) | ((sum as u64) << (n - 2))
}

fn unadder_layout() -> ClassicalLayout {
    let mut layout = ClassicalLayout::new();
    layout.add_register("a", vec![0]).expect("fresh layout");
    layout.add_register("b", vec![1]).expect("fresh layout");
    layout.add_register("c_in", vec![2]).expect("fresh layout");
    layout
}

/// Gate-level full-unadder on 5 wires.
///
/// Wire 4 enters holding `c_out` and wire 3 the sum bit; wires 2, 1, 0
/// start as |0⟩ and end as `(c_in, b, a)`. One branch section per
/// `(c_out, sum)` input: (0,0) is the identity, (1,1) writes (1,1,1), and
/// each mixed input splits three ways at probability 1/3 using a
/// controlled Ry at the branching angle followed by controlled H and X
/// cleanup.
pub fn build_full_unadder_circuit() -> Circuit {
    let th = full_unadder_angle();
    let (carry, sum, c_in, b, a) = (4usize, 3usize, 2usize, 1usize, 0usize);
    let neg = Control::negative;
    let pos = Control::positive;
    let gates = vec![
        // (c_out, sum) = (0, 1): branch c_in, then split b in the
        // c_in = 0 half and set a where both stayed 0
        Gate::ry(th, c_in).controlled([neg(carry), pos(sum)]),
        Gate::h(b).controlled([neg(carry), pos(sum), neg(c_in)]),
        Gate::x(a).controlled([neg(carry), pos(sum), neg(c_in), neg(b)]),
        // (c_out, sum) = (1, 0): branch c_in toward 1 with weight 2/3,
        // write (0,1,1) in the light branch, split the heavy one
        Gate::ry(th, c_in).controlled([pos(carry), neg(sum)]),
        Gate::x(c_in).controlled([pos(carry), neg(sum)]),
        Gate::x(b).controlled([pos(carry), neg(sum), neg(c_in)]),
        Gate::x(a).controlled([pos(carry), neg(sum), neg(c_in)]),
        Gate::h(b).controlled([pos(carry), neg(sum), pos(c_in)]),
        Gate::x(a).controlled([pos(carry), neg(sum), pos(c_in), neg(b)]),
        // (c_out, sum) = (1, 1): deterministic (1, 1, 1)
        Gate::x(c_in).controlled([pos(carry), pos(sum)]),
        Gate::x(b).controlled([pos(carry), pos(sum)]),
        Gate::x(a).controlled([pos(carry), pos(sum)]),
    ];
    let mut circuit = Circuit::new(5);
    for gate in gates {
        circuit
            .push(gate.expect("distinct wires"))
            .expect("wires in range");
    }
    circuit
        .set_layout(unadder_layout())
        .expect("layout wires in range");
    circuit
}

/// The full-unadder realized as a single matrix gate on 3 wires.
///
/// Wire 2 enters holding `c_out`, wire 1 the sum bit, wire 0 is the |0⟩
/// ancilla; they end as `(c_in, b, a)`.
pub fn build_optimised_full_unadder_circuit() -> Circuit {
    let mut circuit = Circuit::new(3);
    circuit
        .push(full_unadder_gate(2, 1, 0).expect("distinct wires"))
        .expect("wires in range");
    circuit
        .set_layout(unadder_layout())
        .expect("layout wires in range");
    circuit
}

/// Appends an RCU gate cascade to existing wires without preparing them.
///
/// `sums` and `ancillas` list wires MSB-first and must have equal length.
/// The carry wire is threaded through every stage: it enters holding the
/// overall carry-out and leaves holding `c_in`.
pub fn append_rcu_gates(
    circuit: &mut Circuit,
    carry: usize,
    sums: &[usize],
    ancillas: &[usize],
) -> Result<()> {
    debug_assert_eq!(sums.len(), ancillas.len());
    for (&sum, &ancilla) in sums.iter().zip(ancillas) {
        circuit.push(full_unadder_gate(carry, sum, ancilla)?)?;
    }
    Ok(())
}

/// Ripple-Carry-Unadder over `n_bits`-bit summands on `2·n_bits + 1`
/// wires.
///
/// Wire 0 is the carry wire (|0⟩ in, `c_in` out); wires 1..=n hold the
/// X-prepared sum MSB-first and end as `b`; wires n+1..=2n are ancillas
/// and end as `a`, MSB-first. One full-unadder per bit, MSB first.
pub fn build_rcu(n_bits: u32, sum_value: u64) -> Result<Circuit> {
    if n_bits == 0 {
        return Err(Error::ZeroWidth);
    }
    if n_bits > 31 {
        return Err(Error::TooManyWires {
            num_wires: 2 * n_bits as usize + 1,
            max: SPARSE_WIRE_LIMIT,
            backend: "sparse",
        });
    }
    if sum_value >> n_bits != 0 {
        return Err(Error::ValueOutOfRange {
            value: sum_value,
            bits: n_bits,
        });
    }
    let n = n_bits as usize;
    let mut circuit = Circuit::new(2 * n + 1);
    for i in 0..n {
        if sum_value >> (n_bits - 1 - i as u32) & 1 == 1 {
            circuit.push(Gate::x(1 + i))?;
        }
    }
    let sums: Vec<usize> = (1..=n).collect();
    let ancillas: Vec<usize> = (n + 1..=2 * n).collect();
    append_rcu_gates(&mut circuit, 0, &sums, &ancillas)?;
    let mut layout = ClassicalLayout::new();
    layout.add_register("a", ancillas)?;
    layout.add_register("b", sums)?;
    layout.add_register("c_in", vec![0])?;
    circuit.set_layout(layout)?;
    Ok(circuit)
}

/// Number of distinct triples an unaddition of `sum_value` must produce.
pub fn expected_cardinality(sum_value: u64) -> u64 {
    2 * sum_value + 1
}

/// Outcome payload of [`unadd`].
#[derive(Clone, Debug, PartialEq)]
pub enum UnaddOutcomes {
    /// Probability mass per triple, decoded from the exact support.
    Exact(BTreeMap<Triple, f64>),
    /// Observed counts per triple.
    Sampled {
        counts: BTreeMap<Triple, u64>,
        shots: u64,
    },
}

/// Result of one unaddition run.
#[derive(Clone, Debug, PartialEq)]
pub struct Unaddition {
    pub sum_value: u64,
    pub n_bits: u32,
    pub outcomes: UnaddOutcomes,
}

impl Unaddition {
    /// Distinct triples seen in this run.
    pub fn triples(&self) -> BTreeSet<Triple> {
        match &self.outcomes {
            UnaddOutcomes::Exact(masses) => masses.keys().copied().collect(),
            UnaddOutcomes::Sampled { counts, .. } => counts.keys().copied().collect(),
        }
    }

    /// `2N + 1` for sum `N`.
    pub fn expected_cardinality(&self) -> u64 {
        expected_cardinality(self.sum_value)
    }
}

fn triple_from_values(values: &[u64]) -> Triple {
    Triple {
        a: values[0],
        b: values[1],
        c_in: values[2] as u8,
    }
}

/// Runs the RCU for `sum_value` and decodes every outcome into a
/// [`Triple`].
pub fn unadd(sum_value: u64, n_bits: u32, mode: RunMode, backend: Backend) -> Result<Unaddition> {
    let circuit = build_rcu(n_bits, sum_value)?;
    let state = circuit.run(backend)?;
    let layout = circuit.layout();
    let outcomes = match mode {
        RunMode::Exact => {
            let mut masses = BTreeMap::new();
            for (basis, amp) in state.support(SUPPORT_TOL) {
                *masses
                    .entry(triple_from_values(&layout.decode(basis)))
                    .or_insert(0.0) += amp.norm_sqr();
            }
            UnaddOutcomes::Exact(masses)
        }
        RunMode::Sample { shots, seed } => {
            let sampled = state.sample(layout, shots, seed)?;
            let counts = sampled
                .counts()
                .iter()
                .map(|(values, &n)| (triple_from_values(values), n))
                .collect();
            UnaddOutcomes::Sampled { counts, shots }
        }
    };
    Ok(Unaddition {
        sum_value,
        n_bits,
        outcomes,
    })
}
