use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument lies outside the domain of a function (pole, non-finite, wrong sign).
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A fractional order outside the open interval (0, 1).
    #[error("invalid order {0}: must satisfy 0 < n < 1")]
    InvalidOrder(f64),

    /// An integrand or function sample evaluated to a non-finite value.
    #[error("non-finite value {value} while evaluating at t = {at}")]
    Evaluation { at: f64, value: f64 },

    /// Malformed tabulated data, power sum or configuration.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A point lies outside the range covered by a grid or piecewise definition.
    #[error("point {x} outside the supported range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },

    /// Adjacent piecewise segments disagree at a breakpoint.
    #[error("continuity violated at breakpoint {index} (a = {at}): left {left}, right {right}")]
    Discontinuity {
        index: usize,
        at: f64,
        left: f64,
        right: f64,
    },

    /// Arc length grows slower than height, so no real horizontal coordinate exists.
    #[error("infeasible curve at x = {x}: ds/dx = {slope} < 1")]
    InfeasibleCurve { x: f64, slope: f64 },

    /// An iterative procedure ran out of its step or panel budget.
    #[error("{what} did not converge within {budget} steps")]
    NonConvergence { what: &'static str, budget: usize },

    /// The requested operation is not supported for these arguments.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
