use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("element is not invertible (zero body): {element}")]
    NotInvertible { element: String },

    #[error("parity error: {0}")]
    Parity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate state: norm has non-positive body {body}")]
    DegenerateState { body: String },

    #[error("series did not converge after {iterations} iterations (last term magnitude {last_term:e})")]
    Convergence { iterations: usize, last_term: f64 },

    #[error("eigenvalue condition violated: {condition}")]
    EigenvalueConstraintViolated { condition: String, level: usize },

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("nullspace lift inconsistent at blade level {0}")]
    NoSolutionAtLevel(usize),

    #[error("generator e{index} out of range for order {order}")]
    GeneratorOutOfRange { index: usize, order: usize },

    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    #[error("state document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn violated(condition: impl Into<String>, level: usize) -> Self {
        Error::EigenvalueConstraintViolated { condition: condition.into(), level }
    }
}
