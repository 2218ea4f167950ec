use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation (e.g. `r <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Argument outside the supported parameter box.
    #[error("range error: {0}")]
    Range(String),

    /// Gamma evaluated at a non-positive integer.
    #[error("gamma pole at x = {0}")]
    GammaPole(f64),

    /// Result (or a required intermediate) exceeds f64 range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An iterative procedure did not reach its target tolerance.
    #[error("no convergence in {what}: achieved {achieved:e}")]
    NonConvergence { what: String, achieved: f64 },

    /// Malformed coupling descriptor or coupling file.
    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),

    /// Sample set unusable for a least-squares fit.
    #[error("degenerate samples: {0}")]
    DegenerateSamples(String),

    /// `(N-2s)^2/4 + mu1 < 0`: the positivity condition fails and no real
    /// Bessel order exists.
    #[error("negative discriminant: (N-2s)^2/4 + mu1 = {0:e}")]
    DiscriminantNegative(f64),

    /// Dense linear algebra failure (factorization or eigensolve).
    #[error("linear algebra error: {0}")]
    LinearAlgebra(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Command-line usage error.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
