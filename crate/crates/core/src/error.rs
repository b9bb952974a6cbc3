//! Crate-wide error type.

/// Errors produced by model evaluation, synthesis and fitting.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter violates a type invariant at construction time.
    #[error("{0}")]
    InvalidInput(String),

    /// A numeric input to an operation is non-finite or out of domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation's precondition does not hold (e.g. dark-port phase).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A measurement pair admits no physical (eta, r) solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Spectrum too featureless for an initial guess.
    #[error("flat spectrum: {0}")]
    FlatSpectrum(String),

    /// The normal matrix of the least-squares step is singular.
    #[error("singular normal matrix: {0}")]
    SingularMatrix(String),

    /// A spectrum's unit flag is incompatible with the requested operation.
    #[error("unit mismatch: {0}")]
    UnitMismatch(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
