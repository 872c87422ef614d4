use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mass must be non-negative, got {0}")]
    NegativeMass(f64),
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("boost velocity must satisfy |v| < 1, got {0}")]
    SuperluminalVelocity(f64),
    #[error("axis must be a nonzero finite 3-vector")]
    InvalidAxis,
    #[error("path-parameter interval must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("regulator epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("vector is not a unit timelike vector (n·n = {0})")]
    NotUnitTimelike(f64),
    #[error("matrix is not a proper orthochronous Lorentz matrix (residual {residual:e})")]
    NotLorentz { residual: f64 },
    #[error("separation lies on the light cone (x·x = {0:e})")]
    LightCone(f64),
    #[error("statistics do not match spin: {0}")]
    SpinStatistics(String),
    #[error("invalid multiparticle label: {0}")]
    InvalidLabel(String),
    #[error("tensor dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
