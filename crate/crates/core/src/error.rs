use alloc::string::String;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the domain of a function.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// Model parameters violate a structural invariant (stationarity, invertibility, ranges).
    #[error("invalid process specification: {0}")]
    InvalidSpec(String),

    /// Adaptive quadrature stopped before meeting its tolerance.
    #[error("quadrature did not converge: value {value}, error estimate {error_estimate} after {subdivisions} subdivisions")]
    Quadrature {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    /// The Levinson recursion met a non-positive prediction-error variance.
    #[error("covariance is not positive definite: innovation variance {variance} at order {order}")]
    NotPositiveDefinite { order: usize, variance: f64 },

    /// Circulant embedding produced negative eigenvalues at every tried size.
    #[error("circulant embedding failed: min eigenvalue {min_eigenvalue} at size {size}")]
    Embedding { size: usize, min_eigenvalue: f64 },

    /// A bracketing root finder found no sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// Truncated MA simulation would lose too much variance.
    #[error("MA truncation at {truncation} loses {relative_deficit} of the process variance")]
    TruncationDeficit { truncation: usize, relative_deficit: f64 },

    /// A rate fit was requested on a window where it is not defined.
    #[error("rate fit refused: {0}")]
    Fit(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
