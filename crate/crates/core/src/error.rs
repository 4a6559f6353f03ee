use thiserror::Error;

/// Errors raised by model construction and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function or model.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result would not be representable as a finite `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Component index outside `{1, 2}`.
    #[error("component index {0} is not in {{1, 2}}")]
    Index(usize),

    /// Empty point set, unsupported spatial dimension or ragged coordinates.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// The requested closed form does not cover this model or regime.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Colocated coefficient beyond the model's validity bound.
    #[error("rho12 = {rho} exceeds the validity bound {bound}")]
    Bound { rho: f64, bound: f64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
