use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied parameter is outside its admissible range.
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// Adaptive quadrature exhausted its evaluation budget.
    NonConvergent {
        evaluations: usize,
        estimated_error: f64,
        tolerance: f64,
    },
    /// The integrand is not square integrable on the requested region.
    NonIntegrable { reason: &'static str },
    /// A Sobolev norm was requested at or above the datum's regularity.
    Divergent { order: f64, limit: f64 },
    /// No certified tail bound is available for truncating an infinite region.
    NoTailBound,
    /// A series is too short, or has values a log-log fit cannot use.
    DegenerateSeries { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                reason,
            } => write!(f, "invalid parameter {name} = {value}: {reason}"),
            Error::NonConvergent {
                evaluations,
                estimated_error,
                tolerance,
            } => write!(
                f,
                "quadrature did not converge after {evaluations} evaluations \
                 (estimated error {estimated_error:e}, tolerance {tolerance:e})"
            ),
            Error::NonIntegrable { reason } => write!(f, "integrand not integrable: {reason}"),
            Error::Divergent { order, limit } => write!(
                f,
                "H^{order} norm diverges: datum is only in H^s for s < {limit}"
            ),
            Error::NoTailBound => write!(f, "no tail bound available for truncation"),
            Error::DegenerateSeries { reason } => write!(f, "degenerate series: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
