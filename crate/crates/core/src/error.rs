use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid pattern triple: {0}")]
    InvalidTriple(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("division by a series that is zero to order {order}")]
    DivisionByZero { order: i32 },

    #[error("no square root of {0} in Q(sqrt 5)")]
    UnsupportedConstant(String),

    #[error("sqrt of a series with odd valuation {0}")]
    OddValuation(i32),

    #[error("coefficient of x^{index} requested but the series is only known below x^{order}")]
    OutOfRange { index: i32, order: i32 },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { position: usize, name: String },

    #[error("registry line {line}: {message}")]
    RegistryLoad { line: usize, message: String },

    #[error("case {0} is not in the registry")]
    CaseNotFound(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
