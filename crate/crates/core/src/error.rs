use thiserror::Error;

/// Errors raised by the library: malformed input, or an operation whose
/// mathematical precondition does not hold. Checks that are meant to answer
/// yes or no report through verdicts instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group orders: {0}")]
    InvalidOrders(String),

    #[error("element {coords:?} is out of range for orders {orders:?}")]
    ElementOutOfRange { coords: Vec<i64>, orders: Vec<usize> },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("element {0:?} is not a member of the subgroup")]
    NotInSubgroup(Vec<usize>),

    #[error("subspace is not translation invariant: translate by {gamma:?} of basis vector {vector} leaves the span (residual {residual:.3e})")]
    NotInvariant {
        gamma: Vec<usize>,
        vector: usize,
        residual: f64,
    },

    #[error("operator is not translation preserving: commutator with translation by {gamma:?} has entry {magnitude:.3e} at ({row}, {col})")]
    NotTranslationPreserving {
        gamma: Vec<usize>,
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("operator has no fiber field: solve residual {residual:.3e} at fiber {omega}")]
    FieldResidual { omega: usize, residual: f64 },

    #[error("range operator does not vanish off J at fiber {omega} (residual {residual:.3e})")]
    DomainViolation { omega: usize, residual: f64 },

    #[error("frame is not a Parseval frame for the subspace (frame operator deviation {deviation:.3e})")]
    NotParseval { deviation: f64 },

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors that reject a mathematical precondition (as opposed to
    /// malformed input); the CLI maps these to a failed verification.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::NotInvariant { .. }
                | Error::NotTranslationPreserving { .. }
                | Error::FieldResidual { .. }
                | Error::DomainViolation { .. }
                | Error::NotParseval { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
