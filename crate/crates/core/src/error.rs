use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the tensor algebra and bound routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimensions n={n}, bundle={bundle} (need 1 <= n <= 16 and 1 <= bundle <= 32)")]
    InvalidDimensions { n: usize, bundle: usize },
    #[error("invalid dimension {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length mismatch: expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector is not unit length (norm {norm:.3e})")]
    NotUnit { norm: f64 },
    #[error("vectors are not orthonormal (|<X,Y>| = {inner:.3e})")]
    NonOrthonormalPair { inner: f64 },
    #[error("tensor violates curvature symmetries (max residual {residual:.3e})")]
    InvalidTensor { residual: f64 },
    #[error("matrix is not orthogonal (max |QtQ - I| = {residual:.3e})")]
    NotOrthogonal { residual: f64 },
    #[error("matrix is not symmetric (max |A - At| = {residual:.3e})")]
    NotSymmetric { residual: f64 },
    #[error("form is not symmetric at [{r}][{i}][{j}]: {upper} vs {lower}")]
    AsymmetricForm {
        r: usize,
        i: usize,
        j: usize,
        upper: f64,
        lower: f64,
    },
    #[error("bundle dimension {bundle} is smaller than tangent dimension {n}")]
    BundleTooSmall { n: usize, bundle: usize },
    #[error("bundle dimension must equal {expected}, found {found}")]
    BundleDimensionMismatch { expected: usize, found: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("proper slant structure needs even dimension, got n={n}")]
    OddDimension { n: usize },
    #[error("slant angle {theta} is outside (0, pi/2]")]
    InvalidAngle { theta: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("sampled value {sampled} exceeds the stationary maximum {max}")]
    OracleViolation { sampled: f64, max: f64 },
    #[error("singular linear system")]
    Singular,
}
