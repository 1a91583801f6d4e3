use thiserror::Error;

/// Errors raised by kernel, special-function and quadrature evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested order is not implemented for this function.
    #[error("unsupported order {0}")]
    UnsupportedOrder(f64),

    /// A hypergeometric series evaluated at x = 1 does not converge.
    #[error("divergent series: {0}")]
    Divergence(String),

    /// A series or continued fraction ran out of iterations.
    #[error("series did not converge: {0}")]
    SeriesConvergence(String),

    /// Adaptive quadrature exhausted its evaluation budget.
    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (best estimate {estimate:e}, error estimate {error_estimate:e})"
    )]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// An integrand produced a non-finite value.
    #[error("integrand returned a non-finite value at {0:e}")]
    NonFinite(f64),

    /// The E_A kernel is only implemented for strictly positive mass.
    #[error("the E_A kernel requires m > 0")]
    UnsupportedMass,

    /// Kernels are singular at coincident points.
    #[error("kernel is singular at coincident points")]
    SingularPoint,

    /// Grid specification is malformed.
    #[error("invalid grid: {0}")]
    Grid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
