use thiserror::Error;

/// Errors raised by the model, the measurement channel and the numeric oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    /// The large-separation approximation was requested outside its range of validity.
    #[error("approximation requires L >= {min}, got L = {got}")]
    ApproximationDomain { min: f64, got: f64 },

    #[error("quadrature did not converge: estimate {estimate:e} with error {error:e} (tolerance {tol:e})")]
    NonConvergence { estimate: f64, error: f64, tol: f64 },

    #[error("grid too small: |psi| = {edge:e} at the boundary exceeds {limit:e}")]
    GridTooSmall { edge: f64, limit: f64 },

    #[error("no central maximum at t = {t}; earliest valid time is t_min = {t_min:.6}")]
    EarlyTime { t: f64, t_min: f64 },

    #[error("unknown {kind} '{name}' (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
