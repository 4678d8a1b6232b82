//! Circuits: an ordered gate list plus the classical register layout read
//! out at the terminal measurement.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qsim::gate::Gate;
use crate::qsim::state::{Backend, QuantumState};

/// A named group of wires measured into one classical value.
///
/// Wires are listed most-significant-bit first: the first wire contributes
/// the top bit of the register value.
#[derive(Clone, Debug)]
pub struct Register {
    name: String,
    wires: Vec<usize>,
}

impl Register {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn width(&self) -> usize {
        self.wires.len()
    }

    /// Reads this register's value out of a basis-state index.
    pub fn value_in(&self, basis: u64) -> u64 {
        self.wires
            .iter()
            .fold(0, |acc, &w| (acc << 1) | (basis >> w & 1))
    }
}

/// Declaration-ordered collection of disjoint classical registers.
#[derive(Clone, Debug, Default)]
pub struct ClassicalLayout {
    registers: Vec<Register>,
}

impl ClassicalLayout {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a register, rejecting overlaps with earlier ones.
    pub fn add_register(&mut self, name: impl Into<String>, wires: Vec<usize>) -> Result<()> {
        let name = name.into();
        for &wire in &wires {
            if self.registers.iter().any(|r| r.wires.contains(&wire)) {
                return Err(Error::RegisterOverlap { name, wire });
            }
        }
        self.registers.push(Register { name, wires });
        Ok(())
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.registers.iter().map(|r| r.name.as_str())
    }

    /// Register values for one basis state, in declaration order.
    pub fn decode(&self, basis: u64) -> Vec<u64> {
        self.registers.iter().map(|r| r.value_in(basis)).collect()
    }

    pub(crate) fn max_wire(&self) -> Option<usize> {
        self.registers
            .iter()
            .flat_map(|r| r.wires.iter().copied())
            .max()
    }
}

/// An immutable-after-construction quantum circuit.
///
/// Wire `i` maps to bit `i` of a basis-state index. The initial state is a
/// single computational basis state (all-zeros unless overridden) and
/// measurement happens once, at the end, through the classical layout.
#[derive(Clone, Debug)]
pub struct Circuit {
    num_wires: usize,
    gates: Vec<Gate>,
    layout: ClassicalLayout,
    initial_state: u64,
}

impl Circuit {
    pub fn new(num_wires: usize) -> Self {
        Circuit {
            num_wires,
            gates: Vec::new(),
            layout: ClassicalLayout::new(),
            initial_state: 0,
        }
    }

    /// Appends a gate after checking that all its wires exist.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        if let Some(wire) = gate.wires().find(|&w| w >= self.num_wires) {
            return Err(Error::WireOutOfRange {
                wire,
                num_wires: self.num_wires,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn set_initial_state(&mut self, basis: u64) -> Result<&mut Self> {
        if self.num_wires < 64 && basis >> self.num_wires != 0 {
            return Err(Error::BasisOutOfRange {
                index: basis,
                num_wires: self.num_wires,
            });
        }
        self.initial_state = basis;
        Ok(self)
    }

    pub fn set_layout(&mut self, layout: ClassicalLayout) -> Result<&mut Self> {
        if let Some(wire) = layout.max_wire() {
            if wire >= self.num_wires {
                return Err(Error::WireOutOfRange {
                    wire,
                    num_wires: self.num_wires,
                });
            }
        }
        self.layout = layout;
        Ok(self)
    }

    pub fn num_wires(&self) -> usize {
        self.num_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn layout(&self) -> &ClassicalLayout {
        &self.layout
    }

    pub fn initial_state(&self) -> u64 {
        self.initial_state
    }

    /// Applies all gates in order to the initial basis state.
    pub fn run(&self, backend: Backend) -> Result<QuantumState> {
        let mut state = QuantumState::basis(self.num_wires, self.initial_state, backend)?;
        for gate in &self.gates {
            state.apply(gate)?;
        }
        Ok(state)
    }
}
