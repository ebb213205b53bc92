use thiserror::Error;

pub type Result<T> = std::result::Result<T, QcorrError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcorrError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("kronecker product of dimension {0} exceeds the 8x8 limit")]
    DimensionOverflow(usize),

    #[error("matrix is not Hermitian (max |A - A^dagger| = {0:.3e})")]
    NonHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("state vector is not normalized (norm = {0})")]
    Unnormalized(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("projector set is not a complete orthogonal family: {0}")]
    IncompleteProjectors(String),

    #[error("integration step {dt} too large for rate {kappa} (must be <= 1e-3 / kappa)")]
    StepTooLarge { dt: f64, kappa: f64 },

    #[error("trace drifted by {0:.3e} during integration")]
    TraceDrift(f64),

    #[error("no closed form available for {0}")]
    Unsupported(String),
}
