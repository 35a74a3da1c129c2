use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A factor `1 - c q^n` (or some other required quantity) vanished.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    /// A Fock-space bracket changed when the weight cutoff was raised.
    #[error("matrix element not stable under cutoff increase {cutoff} -> {raised}")]
    CutoffInstability { cutoff: usize, raised: usize },

    /// A rational function in `y = q^D` has a pole at a lattice point `q^n`.
    #[error("pole of y-coefficient at y = q^{degree}")]
    Pole { degree: i64 },

    #[error("attempt to invert the zero function")]
    ZeroFunction,

    /// An operator does not have the shape an algorithm requires.
    #[error("operator structure: {0}")]
    Structure(String),

    #[error("index out of bounds: {0}")]
    Bounds(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two routes that must agree produced different exact values.
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
