use crate::spin::HalfInteger;

/// Errors produced by the builders, solvers and parsers in this crate.
///
/// Dimension mismatches in the raw matrix kernel are programming errors and
/// panic instead; everything that can be triggered by data goes through here.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("spin must be at least 1/2 (got twice-spin {twice})")]
    InvalidSpin { twice: i64 },

    #[error("cannot parse '{input}' as a spin: expected an integer or a half-integer like 3/2")]
    SpinParse { input: String },

    #[error("matrix dimension {dim} exceeds the eigensolver limit of {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("QR iteration did not converge after {iterations} steps on a {dim}x{dim} matrix")]
    EigenNonConvergence { dim: usize, iterations: usize },

    #[error("linear combination is numerically zero")]
    ZeroCombination,

    #[error("expected {expected} amplitudes, got {got}")]
    BadStateLength { expected: usize, got: usize },

    #[error("expected {left} coefficients for {right} states")]
    LengthMismatch { left: usize, right: usize },

    #[error("n-tangle is defined here for 2, 3 or 4 qubits (got {n})")]
    UnsupportedArity { n: usize },

    #[error("invalid state expression: {0}")]
    StateSpec(String),
}

impl Error {
    pub(crate) fn invalid_spin(s: HalfInteger) -> Self {
        Error::InvalidSpin { twice: s.twice() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
