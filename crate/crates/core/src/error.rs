use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// g = 0 or gamma = 0: the nondimensional scaling divides by these.
    #[error("nondimensionalization undefined ({0}); use the dimensional pipeline")]
    UseDimensionalPipeline(String),

    #[error("frequency must be negative, got {0}")]
    NonNegativeFrequency(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("interval division by an interval containing zero: [{lo}, {hi}]")]
    DivisionByZeroInterval { lo: f64, hi: f64 },

    #[error("square root of a negative interval: [{lo}, {hi}]")]
    NegativeSqrt { lo: f64, hi: f64 },

    #[error("defocusing critical point (cubic coefficient {0} <= 0): no soliton")]
    Defocusing(f64),

    #[error("profile outside small-amplitude regime: Jacobian min {0} at or below the positivity floor")]
    NonPositiveJacobian(f64),

    #[error("Newton did not converge: {reason}; residual trace {trace:?}")]
    NewtonDivergence { reason: String, trace: Vec<f64> },

    #[error("linear solver failed: {0}")]
    LinearSolve(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("insufficient data: {0}")]
    Insufficient(String),
}
