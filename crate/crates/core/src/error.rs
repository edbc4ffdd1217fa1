use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("Bloch norm > 1 (|s| = {0})")]
    BlochNorm(f64),

    #[error("{0}")]
    OutOfRange(String),

    #[error("ancilla basis is not orthonormal (overlap {0:e})")]
    AncillaBasis(f64),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("Bloch component ratios disagree ({ratios:?}); the cloner is not isotropic")]
    NonIsotropic { ratios: Vec<f64> },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no optimizer start converged (best value {best_value}, best residual {best_residual:e})")]
    NotConverged { best_value: f64, best_residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
