use thiserror::Error;

/// Failures raised by the exact-arithmetic and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero while evaluating {0}")]
    DivisionByZero(String),

    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("divisor {0} is not a unit of the Laurent ring")]
    NonUnit(String),

    #[error("zero divisor encountered: {0}")]
    ZeroDivisor(String),

    #[error("coefficient {name}_{index} is undefined")]
    UndefinedCoefficient { name: &'static str, index: i64 },

    #[error("coefficient {name}_{index} is zero")]
    ZeroCoefficient { name: &'static str, index: i64 },

    #[error("moment f_{0} is outside the computed window")]
    WindowExceeded(i64),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("move graph is disconnected: reached {reached} of {total} tilings")]
    Disconnected { reached: usize, total: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
