use thiserror::Error;

/// Errors raised by the special functions, the well model, the quadrature
/// engine and the entropy routines.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "order alpha = {alpha} is not above the momentum threshold alpha_TH = {threshold}{}",
        if *numerically_divergent { " (numerically divergent: too close to the threshold for a certified value)" } else { "" }
    )]
    BelowThreshold {
        alpha: f64,
        threshold: f64,
        numerically_divergent: bool,
    },

    #[error("period budget of {periods} exhausted before the tail criterion was met (best value {value}, error bound {error_bound})")]
    BudgetExceeded {
        value: f64,
        error_bound: f64,
        periods: usize,
    },

    #[error("tolerance not met (best value {value}, error bound {error_bound})")]
    ToleranceNotMet { value: f64, error_bound: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
