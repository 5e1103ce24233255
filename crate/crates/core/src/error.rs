use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    ContainmentViolation,
    #[error("relation {index} is not homogeneous")]
    NonHomogeneousRelation { index: usize },
    #[error("series denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("sign resolution failed: {0}")]
    SignResolutionFailure(String),
    #[error("the coefficient algebra is not the dual numbers k[c]/(c^2)")]
    RNotDualNumbers,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
