//! Unitary gates with positive/negative controls.

use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest deviation of `U†U` from the identity accepted at construction.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Activation polarity of a control wire.
///
/// Positive controls fire when the wire is |1⟩, negative controls when it
/// is |0⟩ (drawn as filled and empty dots in circuit diagrams).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A control wire together with its activation polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Control {
    pub wire: usize,
    pub polarity: Polarity,
}

impl Control {
    /// Control that activates on |1⟩.
    pub fn positive(wire: usize) -> Self {
        Control {
            wire,
            polarity: Polarity::Positive,
        }
    }

    /// Control that activates on |0⟩.
    pub fn negative(wire: usize) -> Self {
        Control {
            wire,
            polarity: Polarity::Negative,
        }
    }
}

/// A unitary acting on an ordered list of target wires, optionally gated by
/// control wires.
///
/// The matrix is stored row-major over a local index in which `targets[0]`
/// contributes the most significant bit and the last target the least
/// significant one. A gate on targets `(t0, t1, t2)` therefore maps the
/// local input index `4·t0 + 2·t1 + t2` (reading each wire's bit) through
/// the matrix columns.
///
/// Unitarity is checked once at construction; a `Gate` is immutable
/// afterwards and safe to share across threads.
#[derive(Clone, Debug)]
pub struct Gate {
    matrix: Vec<Complex64>,
    targets: Vec<usize>,
    controls: Vec<Control>,
}

impl Gate {
    /// Builds a gate from a row-major `2^k x 2^k` matrix on `k` target wires.
    pub fn new(matrix: Vec<Complex64>, targets: Vec<usize>) -> Result<Self> {
        let dim = 1usize << targets.len();
        if matrix.len() != dim * dim {
            return Err(Error::MatrixSize {
                len: matrix.len(),
                expected: dim * dim,
                targets: targets.len(),
            });
        }
        check_distinct(targets.iter().copied())?;
        let deviation = unitarity_deviation(&matrix, dim);
        if deviation.is_nan() || deviation >= UNITARITY_TOL {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(Gate {
            matrix,
            targets,
            controls: Vec::new(),
        })
    }

    /// Adds control wires; the matrix is applied only where every control
    /// matches its polarity.
    pub fn controlled<I>(mut self, controls: I) -> Result<Self>
    where
        I: IntoIterator<Item = Control>,
    {
        self.controls.extend(controls);
        check_distinct(
            self.targets
                .iter()
                .copied()
                .chain(self.controls.iter().map(|c| c.wire)),
        )?;
        Ok(self)
    }

    /// Pauli X (NOT) on one wire.
    pub fn x(wire: usize) -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Gate::new(alloc::vec![o, l, l, o], alloc::vec![wire]).expect("X is unitary")
    }

    /// Hadamard on one wire.
    pub fn h(wire: usize) -> Self {
        let s = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        Gate::new(alloc::vec![s, s, s, -s], alloc::vec![wire]).expect("H is unitary")
    }

    /// Rotation about the Bloch-sphere y-axis:
    /// `[[cos(θ/2), -sin(θ/2)], [sin(θ/2), cos(θ/2)]]`.
    pub fn ry(theta: f64, wire: usize) -> Self {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new((theta / 2.0).sin(), 0.0);
        Gate::new(alloc::vec![c, -s, s, c], alloc::vec![wire]).expect("Ry is unitary")
    }

    /// Multi-controlled X: flips `target` when every control matches its
    /// polarity. All-negative controls give the multi-0-controlled NOT.
    pub fn mcx(controls: &[Control], target: usize) -> Result<Self> {
        Gate::x(target).controlled(controls.iter().copied())
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    /// Dimension of the target subspace (`2^k` for `k` targets).
    pub fn dim(&self) -> usize {
        1 << self.targets.len()
    }

    pub(crate) fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.wire))
    }
}

fn check_distinct(wires: impl Iterator<Item = usize>) -> Result<()> {
    let mut seen: u64 = 0;
    let mut large: Vec<usize> = Vec::new();
    for wire in wires {
        if wire < 64 {
            if seen >> wire & 1 == 1 {
                return Err(Error::DuplicateWire { wire });
            }
            seen |= 1 << wire;
        } else {
            if large.contains(&wire) {
                return Err(Error::DuplicateWire { wire });
            }
            large.push(wire);
        }
    }
    Ok(())
}

/// Max-norm of `M†M - I`.
pub fn unitarity_deviation(matrix: &[Complex64], dim: usize) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut entry = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                entry += matrix[k * dim + i].conj() * matrix[k * dim + j];
            }
            if i == j {
                entry -= Complex64::new(1.0, 0.0);
            }
            worst = worst.max(entry.norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ry_zero_is_identity() {
        let gate = Gate::ry(0.0, 0);
        let id = [1.0, 0.0, 0.0, 1.0];
        for (entry, expect) in gate.matrix().iter().zip(id) {
            assert!((entry - Complex64::new(expect, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn ry_branching_angle_matches_closed_form() {
        // 2 arccos √(2/3) puts amplitude √2/√3 on |0⟩ and 1/√3 on |1⟩.
        let theta = 2.0 * (2.0_f64 / 3.0).sqrt().acos();
        let gate = Gate::ry(theta, 0);
        let m = gate.matrix();
        let a = 2.0_f64.sqrt() / 3.0_f64.sqrt();
        let b = 1.0 / 3.0_f64.sqrt();
        assert!((m[0].re - a).abs() < 1e-14);
        assert!((m[1].re + b).abs() < 1e-14);
        assert!((m[2].re - b).abs() < 1e-14);
        assert!((m[3].re - a).abs() < 1e-14);
    }

    #[test]
    fn tampered_matrix_is_rejected() {
        let s = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        let mut m = vec![s, s, s, -s];
        m[3] = Complex64::new(-0.5, 0.0);
        match Gate::new(m, vec![0]) {
            Err(Error::NonUnitary { deviation }) => assert!(deviation > UNITARITY_TOL),
            other => panic!("expected NonUnitary, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_target_and_control_rejected() {
        let err = Gate::x(1).controlled([Control::positive(1)]).unwrap_err();
        assert_eq!(err, Error::DuplicateWire { wire: 1 });
    }

    #[test]
    fn mcx_rejects_repeated_controls() {
        let controls = [Control::negative(0), Control::negative(0)];
        assert!(Gate::mcx(&controls, 2).is_err());
    }
}
