//! Dense and sparse state-vector backends.
//!
//! The dense backend holds all `2^n` amplitudes in a flat array and is
//! limited to [`DENSE_WIRE_LIMIT`] wires. The sparse backend keeps only
//! amplitudes with magnitude at least [`PRUNE_THRESHOLD`] in an ordered
//! map, which is what makes wide unoperation circuits tractable: their
//! support stays polynomial even when `2^n` does not.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qsim::gate::{Gate, Polarity};

/// Widest circuit the dense backend will allocate (2^24 amplitudes).
pub const DENSE_WIRE_LIMIT: usize = 24;

/// Widest circuit the sparse backend accepts (basis indices are u64).
pub const SPARSE_WIRE_LIMIT: usize = 63;

/// Sparse entries with |amplitude| below this are dropped after each gate.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// State representation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Dense,
    Sparse,
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Dense(Vec<Complex64>),
    Sparse(BTreeMap<u64, Complex64>),
}

/// A normalized complex amplitude vector over the computational basis.
///
/// Wire `i` contributes bit `i` of a basis index. A state is mutated by at
/// most one execution at a time; gates and circuits may be shared freely.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    num_wires: usize,
    repr: Repr,
}

impl QuantumState {
    /// |0...0⟩ on `num_wires` wires.
    pub fn zero(num_wires: usize, backend: Backend) -> Result<Self> {
        Self::basis(num_wires, 0, backend)
    }

    /// A single computational basis state.
    pub fn basis(num_wires: usize, index: u64, backend: Backend) -> Result<Self> {
        let limit = match backend {
            Backend::Dense => DENSE_WIRE_LIMIT,
            Backend::Sparse => SPARSE_WIRE_LIMIT,
        };
        if num_wires > limit {
            return Err(Error::TooManyWires {
                num_wires,
                max: limit,
                backend: match backend {
                    Backend::Dense => "dense",
                    Backend::Sparse => "sparse",
                },
            });
        }
        if num_wires < 64 && index >> num_wires != 0 {
            return Err(Error::BasisOutOfRange { index, num_wires });
        }
        let one = Complex64::new(1.0, 0.0);
        let repr = match backend {
            Backend::Dense => {
                let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_wires];
                amps[index as usize] = one;
                Repr::Dense(amps)
            }
            Backend::Sparse => {
                let mut amps = BTreeMap::new();
                amps.insert(index, one);
                Repr::Sparse(amps)
            }
        };
        Ok(QuantumState { num_wires, repr })
    }

    pub fn num_wires(&self) -> usize {
        self.num_wires
    }

    pub fn backend(&self) -> Backend {
        match self.repr {
            Repr::Dense(_) => Backend::Dense,
            Repr::Sparse(_) => Backend::Sparse,
        }
    }

    /// Number of explicitly stored amplitudes.
    pub fn stored_amplitudes(&self) -> usize {
        match &self.repr {
            Repr::Dense(amps) => amps.len(),
            Repr::Sparse(amps) => amps.len(),
        }
    }

    pub fn amplitude(&self, basis: u64) -> Complex64 {
        match &self.repr {
            Repr::Dense(amps) => amps
                .get(basis as usize)
                .copied()
                .unwrap_or_else(|| Complex64::new(0.0, 0.0)),
            Repr::Sparse(amps) => amps
                .get(&basis)
                .copied()
                .unwrap_or_else(|| Complex64::new(0.0, 0.0)),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match &self.repr {
            Repr::Dense(amps) => amps.iter().map(|a| a.norm_sqr()).sum(),
            Repr::Sparse(amps) => amps.values().map(|a| a.norm_sqr()).sum(),
        }
    }

    /// All basis states with |amplitude| > `tol`, ordered by basis index.
    pub fn support(&self, tol: f64) -> Vec<(u64, Complex64)> {
        match &self.repr {
            Repr::Dense(amps) => amps
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > tol)
                .map(|(i, &a)| (i as u64, a))
                .collect(),
            Repr::Sparse(amps) => amps
                .iter()
                .filter(|(_, a)| a.norm() > tol)
                .map(|(&i, &a)| (i, a))
                .collect(),
        }
    }

    /// Applies one gate: amplitude blocks where every control matches its
    /// polarity are transformed by the matrix on the target wires, all
    /// other amplitudes pass through unchanged.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        if let Some(wire) = gate.wires().find(|&w| w >= self.num_wires) {
            return Err(Error::WireOutOfRange {
                wire,
                num_wires: self.num_wires,
            });
        }
        let plan = GatePlan::new(gate);
        match &mut self.repr {
            Repr::Dense(amps) => apply_dense(amps, gate, &plan),
            Repr::Sparse(amps) => {
                let next = apply_sparse(amps, gate, &plan);
                *amps = next;
            }
        }
        Ok(())
    }
}

/// Bit masks and scatter offsets precomputed per gate application.
struct GatePlan {
    target_mask: u64,
    control_mask: u64,
    control_value: u64,
    /// offsets[l] spreads local index `l` onto the target wires.
    offsets: Vec<u64>,
    dim: usize,
}

impl GatePlan {
    fn new(gate: &Gate) -> Self {
        let targets = gate.targets();
        let k = targets.len();
        let dim = 1usize << k;
        let mut target_mask = 0u64;
        for &t in targets {
            target_mask |= 1 << t;
        }
        let mut control_mask = 0u64;
        let mut control_value = 0u64;
        for c in gate.controls() {
            control_mask |= 1 << c.wire;
            if c.polarity == Polarity::Positive {
                control_value |= 1 << c.wire;
            }
        }
        // targets[0] is the MSB of the local index
        let offsets = (0..dim as u64)
            .map(|local| {
                let mut offset = 0u64;
                for (j, &t) in targets.iter().enumerate() {
                    offset |= (local >> (k - 1 - j) & 1) << t;
                }
                offset
            })
            .collect();
        GatePlan {
            target_mask,
            control_mask,
            control_value,
            offsets,
            dim,
        }
    }

    fn local_index(&self, basis: u64, targets: &[usize]) -> usize {
        let k = targets.len();
        let mut local = 0usize;
        for (j, &t) in targets.iter().enumerate() {
            local |= ((basis >> t & 1) as usize) << (k - 1 - j);
        }
        local
    }
}

fn matvec(matrix: &[Complex64], input: &[Complex64], output: &mut [Complex64]) {
    let dim = input.len();
    for (row, out) in output.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (col, amp) in input.iter().enumerate() {
            acc += matrix[row * dim + col] * amp;
        }
        *out = acc;
    }
}

fn apply_dense(amps: &mut [Complex64], gate: &Gate, plan: &GatePlan) {
    let size = amps.len() as u64;
    let mut input = vec![Complex64::new(0.0, 0.0); plan.dim];
    let mut output = vec![Complex64::new(0.0, 0.0); plan.dim];
    let mut base = 0u64;
    while base < size {
        if base & plan.target_mask == 0 && base & plan.control_mask == plan.control_value {
            for (l, slot) in input.iter_mut().enumerate() {
                *slot = amps[(base | plan.offsets[l]) as usize];
            }
            matvec(gate.matrix(), &input, &mut output);
            for (l, value) in output.iter().enumerate() {
                amps[(base | plan.offsets[l]) as usize] = *value;
            }
        }
        base += 1;
    }
}

fn apply_sparse(
    amps: &BTreeMap<u64, Complex64>,
    gate: &Gate,
    plan: &GatePlan,
) -> BTreeMap<u64, Complex64> {
    let mut next = BTreeMap::new();
    // Gather touched amplitudes into per-block input vectors keyed by the
    // basis index with all target bits cleared.
    let mut blocks: BTreeMap<u64, Vec<Complex64>> = BTreeMap::new();
    for (&basis, &amp) in amps {
        if basis & plan.control_mask != plan.control_value {
            next.insert(basis, amp);
            continue;
        }
        let base = basis & !plan.target_mask;
        let local = plan.local_index(basis, gate.targets());
        blocks
            .entry(base)
            .or_insert_with(|| vec![Complex64::new(0.0, 0.0); plan.dim])[local] = amp;
    }
    let mut output = vec![Complex64::new(0.0, 0.0); plan.dim];
    for (base, input) in blocks {
        matvec(gate.matrix(), &input, &mut output);
        for (l, value) in output.iter().enumerate() {
            if value.norm() >= PRUNE_THRESHOLD {
                next.insert(base | plan.offsets[l], *value);
            }
        }
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::gate::Control;

    fn both_backends() -> [Backend; 2] {
        [Backend::Dense, Backend::Sparse]
    }

    #[test]
    fn x_flips_wire_zero() {
        for backend in both_backends() {
            let mut state = QuantumState::zero(1, backend).unwrap();
            state.apply(&Gate::x(0)).unwrap();
            assert!((state.amplitude(1).re - 1.0).abs() < 1e-12);
            assert_eq!(state.amplitude(0), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn h_makes_equal_superposition() {
        for backend in both_backends() {
            let mut state = QuantumState::zero(1, backend).unwrap();
            state.apply(&Gate::h(0)).unwrap();
            let expect = 1.0 / 2.0_f64.sqrt();
            assert!((state.amplitude(0).re - expect).abs() < 1e-12);
            assert!((state.amplitude(1).re - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn ry_branching_angle_splits_two_thirds_one_third() {
        let theta = 2.0 * (2.0_f64 / 3.0).sqrt().acos();
        for backend in both_backends() {
            let mut state = QuantumState::zero(1, backend).unwrap();
            state.apply(&Gate::ry(theta, 0)).unwrap();
            let a0 = state.amplitude(0);
            let a1 = state.amplitude(1);
            assert!((a0.re - 2.0_f64.sqrt() / 3.0_f64.sqrt()).abs() < 1e-12);
            assert!((a1.re - 1.0 / 3.0_f64.sqrt()).abs() < 1e-12);
            assert!((a0.norm_sqr() - 2.0 / 3.0).abs() < 1e-12);
            assert!((a1.norm_sqr() - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_controls_activate_on_zero() {
        // |000⟩ with target wire 3 set to 1: all-negative controls fire.
        for backend in both_backends() {
            let mut state = QuantumState::basis(4, 0b1000, backend).unwrap();
            let controls = [
                Control::negative(0),
                Control::negative(1),
                Control::negative(2),
            ];
            state.apply(&Gate::mcx(&controls, 3).unwrap()).unwrap();
            assert!((state.amplitude(0b0000).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn positive_control_blocks_on_zero() {
        for backend in both_backends() {
            let mut state = QuantumState::zero(2, backend).unwrap();
            let gate = Gate::x(1).controlled([Control::positive(0)]).unwrap();
            state.apply(&gate).unwrap();
            assert!((state.amplitude(0).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn support_of_bell_like_state() {
        for backend in both_backends() {
            let mut state = QuantumState::zero(2, backend).unwrap();
            state.apply(&Gate::h(0)).unwrap();
            let cx = Gate::x(1).controlled([Control::negative(0)]).unwrap();
            state.apply(&cx).unwrap();
            // (|01⟩ + |10⟩)/√2 over (wire1, wire0)
            let support = state.support(1e-10);
            assert_eq!(support.len(), 2);
            assert_eq!(support[0].0, 1);
            assert_eq!(support[1].0, 2);
            for (_, amp) in support {
                assert!((amp.norm() - 1.0 / 2.0_f64.sqrt()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn norm_preserved_by_gate_chain() {
        for backend in both_backends() {
            let mut state = QuantumState::zero(3, backend).unwrap();
            let gates = [
                Gate::h(0),
                Gate::ry(1.234, 1),
                Gate::x(2).controlled([Control::positive(0)]).unwrap(),
                Gate::h(2),
            ];
            for gate in &gates {
                state.apply(gate).unwrap();
                assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn dense_backend_wire_limit() {
        let err = QuantumState::zero(DENSE_WIRE_LIMIT + 1, Backend::Dense).unwrap_err();
        assert!(matches!(err, Error::TooManyWires { .. }));
        assert!(QuantumState::zero(DENSE_WIRE_LIMIT + 1, Backend::Sparse).is_ok());
    }

    #[test]
    fn apply_rejects_out_of_range_wire() {
        let mut state = QuantumState::zero(1, Backend::Sparse).unwrap();
        assert!(state.apply(&Gate::x(1)).is_err());
    }
}
