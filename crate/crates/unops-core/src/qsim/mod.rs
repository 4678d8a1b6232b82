//! A small state-vector circuit simulator.
//!
//! Circuits are built from controlled unitary gates over numbered wires,
//! executed on either a dense or a sparse backend, and read out through
//! named classical registers that map wire groups to integers.

mod circuit;
mod gate;
mod sample;
mod state;

/// Amplitudes at or below this magnitude count as numerical noise when a
/// final state's support is decoded into outcomes.
pub const SUPPORT_TOL: f64 = 1e-10;

pub use circuit::{Circuit, ClassicalLayout, Register};
pub use gate::{unitarity_deviation, Control, Gate, Polarity, UNITARITY_TOL};
pub use sample::ShotResult;
pub use state::{Backend, QuantumState, DENSE_WIRE_LIMIT, PRUNE_THRESHOLD, SPARSE_WIRE_LIMIT};
