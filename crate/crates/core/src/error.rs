use thiserror::Error;

use crate::model::Scheme;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("{operation} is not defined for the {scheme} scheme")]
    UnsupportedScheme {
        scheme: Scheme,
        operation: &'static str,
    },

    #[error("secondary transmitter is shut down (xi <= 0); {0} is undefined")]
    Shutdown(&'static str),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    NoConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("metric `{metric}` has no {kind} value for the {scheme} scheme")]
    MetricUnavailable {
        scheme: Scheme,
        metric: &'static str,
        kind: &'static str,
    },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
