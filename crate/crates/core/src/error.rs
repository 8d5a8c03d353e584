//! Error types shared across the library.

/// Errors reported by coefficient maps, iterations, and quadrature.
///
/// Values are stored pre-rendered so the same error type serves every
/// scalar backend.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Coefficients violate a domain invariant (divergent integral,
    /// nonpositive leading terms, fractional power of a negative base, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A fixed-point iteration exhausted its step budget.
    #[error("no convergence after {steps} steps: residual {residual} > tolerance {tolerance}")]
    NoConvergence {
        steps: usize,
        residual: String,
        tolerance: String,
    },

    /// Adaptive quadrature stalled before reaching the requested accuracy.
    #[error(
        "tolerance not met: error estimate {estimate} > {requested} after {intervals} intervals"
    )]
    ToleranceNotMet {
        estimate: String,
        requested: String,
        intervals: usize,
    },

    /// Not enough usable data points for an estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
