use thiserror::Error;

/// Failure modes of the exact pipeline. `Parse` and `Hypothesis` carry
/// dedicated process exit codes (2 and 3); everything else maps to 1.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tuple outside validity region: {0}")]
    Region(String),
    #[error("zero pivot at index {index}: moment matrix is not factorizable")]
    ZeroPivot { index: usize },
    #[error("series pole: {0}")]
    Pole(String),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("truncation window too small: {0}")]
    Window(String),
    #[error("degenerate gauge system: {0}")]
    DegenerateGauge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Hypothesis(_) => 3,
            _ => 1,
        }
    }
}
