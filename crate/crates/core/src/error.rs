use thiserror::Error;

/// Errors raised by the numerical routines and file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not unitary (||U^dag U - 1||_F = {0:.3e})")]
    NotUnitary(f64),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("unknown qubit label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate qubit label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid bipartition: {0}")]
    InvalidCut(String),

    #[error("coefficients ({0}, {1}, {2}) are not in normal form c1 >= c2 >= |c3|; reduce them with sign-pair flips and permutations first")]
    NotNormalForm(f64, f64, f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
