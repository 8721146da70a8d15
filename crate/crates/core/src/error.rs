use thiserror::Error;

/// Errors produced by the simulator, the oracles and the experiment layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field representation mismatch: expected {expected}")]
    Representation { expected: &'static str },

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("boundary mass {ratio:.3e} exceeds tolerance {tol:.1e} at t = {t}")]
    BoundaryMass { t: f64, ratio: f64, tol: f64 },

    #[error("blow-up detected at t = {t}: {reason}")]
    BlowUp { t: f64, reason: String },

    #[error("step rejected at t = {t}: predictor/corrector discrepancy {discrepancy:.3e} > {tol:.1e}")]
    StepRejected { t: f64, discrepancy: f64, tol: f64 },

    #[error("rate fit failed: {0}")]
    Fit(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
