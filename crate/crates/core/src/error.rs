use thiserror::Error;

/// Errors produced by the evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function or method.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative method stopped at its iteration cap.
    #[error("{method} did not converge after {iterations} iterations (estimated relative error {est_error:e})")]
    NotConverged {
        method: &'static str,
        iterations: usize,
        est_error: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
