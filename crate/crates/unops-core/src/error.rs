use alloc::string::String;
use thiserror::Error;

/// Errors raised by gate construction, circuit assembly and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gate or register references a wire the circuit does not have.
    #[error("wire {wire} out of range for a {num_wires}-wire circuit")]
    WireOutOfRange { wire: usize, num_wires: usize },

    /// The same wire appears twice among a gate's targets and controls.
    #[error("wire {wire} used more than once by the same gate")]
    DuplicateWire { wire: usize },

    /// The gate matrix failed the unitarity check.
    #[error("matrix is not unitary (max |U\u{2020}U - I| = {deviation:e})")]
    NonUnitary { deviation: f64 },

    /// The gate matrix does not have 2^k x 2^k entries for k targets.
    #[error("matrix has {len} entries, expected {expected} for {targets} target wire(s)")]
    MatrixSize {
        len: usize,
        expected: usize,
        targets: usize,
    },

    /// A basis-state index does not fit the wire count.
    #[error("basis state {index} out of range for {num_wires} wires")]
    BasisOutOfRange { index: u64, num_wires: usize },

    /// The requested backend cannot represent this many wires.
    #[error("{num_wires} wires exceed the {backend} backend limit of {max}")]
    TooManyWires {
        num_wires: usize,
        max: usize,
        backend: &'static str,
    },

    /// A sum or product input does not fit the declared bit width.
    #[error("value {value} does not fit in {bits} bit(s)")]
    ValueOutOfRange { value: u64, bits: u32 },

    /// Bit widths must be at least one.
    #[error("bit width must be at least 1")]
    ZeroWidth,

    /// Sampling needs a positive shot count.
    #[error("sampling requires at least one shot")]
    ZeroShots,

    /// Two classical registers claim the same wire.
    #[error("register {name:?} overlaps an earlier register on wire {wire}")]
    RegisterOverlap { name: String, wire: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
