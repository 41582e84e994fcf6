use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("vector {0} does not define an integral reflection")]
    NotIntegralReflection(String),
    #[error("cannot reflect in isotropic vector {0}")]
    IsotropicRoot(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not contained in the target lattice: {0}")]
    Containment(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not an isometry: {0}")]
    NotIsometry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
