use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole in denominator: {0}")]
    PoleInDenominator(String),
    #[error("branch cut: {0}")]
    BranchCut(String),
    #[error("zero base: {0}")]
    ZeroBase(String),
    #[error("inadmissible index: {0}")]
    InadmissibleIndex(String),
    #[error("derivative order ({i}, {j}) exceeds jet order ({p}, {q})")]
    OrderExceeded { i: usize, j: usize, p: usize, q: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("truncation not converged: {0}")]
    TruncationNotConverged(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("tridiagonal eigensolver did not converge within {0} iterations")]
    EigenSolverFailure(usize),
    #[error("quadrature not converged: {0}")]
    NotConverged(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
