use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("{what} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("scan '{scan}' has no interior extremum in window [{lo:.6e}, {hi:.6e}]")]
    ScanWindow { scan: String, lo: f64, hi: f64 },

    #[error("fit '{fit}' failed quality check: {detail}")]
    FitQuality { fit: String, detail: String },

    #[error("calibration precondition not met: {0}")]
    Precondition(String),

    #[error("self-consistent iteration unstable: r1 = {r1:.3e} > 2 r0 = {r0:.3e}")]
    Instability { r0: f64, r1: f64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
