use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("GF({0}) is not supported: the order must be a prime power no larger than 16")]
    UnsupportedField(u32),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("sweep refused: estimated {estimate} operations exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
