//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors surfaced by the exact and numeric computation paths.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Inversion of a series whose constant term is zero.
    #[error("series is not invertible: constant term is zero")]
    NonInvertible,

    /// A characteristic series was supplied with too few `y`-coefficients
    /// for the requested substitution or genus evaluation.
    #[error("insufficient series order: need y-order >= {needed}, got {got}")]
    InsufficientOrder { needed: usize, got: usize },

    /// Coefficient access outside the truncation shape.
    #[error("exponent {exponent:?} out of range for shape {shape:?}")]
    ExponentOutOfRange { exponent: Vec<usize>, shape: Vec<usize> },

    /// Structurally invalid complete-intersection data.
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    /// An operation was applied to an instance of the wrong dimension.
    #[error("dimension mismatch: expected real dimension {expected}, got {got}")]
    DimensionMismatch { expected: String, got: usize },

    /// Numeric quadrature failed its self-consistency check.
    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    /// The integrand periodicity check requires string data.
    #[error("instance does not satisfy the string matrix criterion: {0}")]
    NotString(String),

    /// Invalid search bounds or numeric parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
