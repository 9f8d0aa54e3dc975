use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("length mismatch for {what}: expected {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("grid mismatch: {left_m}x{left_n} vs {right_m}x{right_n}")]
    GridMismatch {
        left_m: usize,
        left_n: usize,
        right_m: usize,
        right_n: usize,
    },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// k² sits too close to an eigenvalue of the discrete Laplacian.
    #[error(
        "near-singular Helmholtz system: discrete eigenvalue {eigenvalue:e} of Δ_h + k² \
         (condition estimate {condition:e})"
    )]
    NearSingular { eigenvalue: f64, condition: f64 },

    #[error("zero pivot in banded factorization at column {column}")]
    SingularPivot { column: usize },

    #[error("marching step too large: {reason} (value {value})")]
    StepConstraint { reason: &'static str, value: f64 },

    #[error("slice endpoint is {value:e}, must vanish at y = 0 and y = 1")]
    NonVanishingEndpoint { value: f64 },

    #[error("reference solution is identically zero")]
    ZeroReference,

    #[error("closed-form oracle would overflow: sqrt(lambda) = {sqrt_lambda} > 700")]
    OracleOverflow { sqrt_lambda: f64 },

    #[error("mode {j} is not in A1 (lambda = {lambda})")]
    NotGrowingMode { j: usize, lambda: f64 },
}
