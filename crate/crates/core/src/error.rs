use thiserror::Error;

use crate::fields::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomial degree {0} out of range (at most 3)")]
    DegreeOutOfRange(usize),
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not invariant under the given operators")]
    NotInvariant,
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("operation requires characteristic zero")]
    WrongCharacteristic,
    #[error("operation requires a {expected}-dimensional algebra, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("not an ideal")]
    NotAnIdeal,
    #[error("not a subalgebra")]
    NotASubalgebra,
    #[error("action is not a representation: {0}")]
    NotARepresentation(String),
    #[error("Levi lift failed: {0}")]
    LiftFailed(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("module dimension {0} exceeds the supported range")]
    DimensionOutOfRange(usize),
    #[error("lattice budget exceeded: {what} {count} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        count: u64,
        limit: u64,
    },
    #[error("vector does not span a special one-dimensional maximal subalgebra")]
    NotSpecialWitness,
    #[error("construction unavailable: {0}")]
    ConstructionUnavailable(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown chain `{0}`")]
    UnknownChain(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            Error::Indeterminate(_) | Error::DimensionOutOfRange(_) | Error::UnsupportedField(_)
        )
    }
}
