use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes after substituting n = {n}")]
    VanishingDenominator { n: i64 },
    #[error("index {0} is out of range")]
    IndexOutOfRange(i64),
    #[error("value depends on n (u) but no index was supplied")]
    MissingIndex,
    #[error("denominator evaluates to zero")]
    NumericPole,
    #[error("Laurent polynomial in z is not symmetric under z -> 1/z")]
    Asymmetric,
    #[error("internal error: division in z left a nonzero remainder")]
    InexactDivision,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("configuration error: {0}")]
    Config(String),
}
