use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("expected a ring with {expected} variables, found {found}")]
    WrongVariableCount { expected: usize, found: usize },
    #[error("matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("operation requires characteristic 0")]
    CharacteristicZeroRequired,
    #[error("index {index} out of range for basis of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid Lie-Rinehart algebra: {0}")]
    InvalidLieRinehart(String),
    #[error("Jacobi identity fails: {0}")]
    JacobiFailure(String),
    #[error("elements belong to different enveloping algebras")]
    AlgebraMismatch,
    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),
    #[error("derivation does not preserve the ideal (P)")]
    NotIdealPreserving,
    #[error("form degree out of range: {0}")]
    FormDegree(String),
    #[error("Nakayama data has not been verified")]
    Unverified,
}
