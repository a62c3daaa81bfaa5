use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the set on which the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is well formed but the operation does not cover it.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid Jacobi parameters alpha={alpha}, beta={beta}: both must be finite and > -1")]
    InvalidParams { alpha: f64, beta: f64 },

    #[error("tridiagonal eigenvalue {index} did not converge within {iterations} QL sweeps")]
    NoConvergence { index: usize, iterations: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
