use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed backends: {0} and {1}")]
    MixedBackend(&'static str, &'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unbound variable `{0}`: substitute a value first")]
    UnboundVariable(&'static str),
    #[error("backend `{backend}` cannot evaluate {what}")]
    BackendUnsupported { backend: &'static str, what: String },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series has a zero linear coefficient")]
    ZeroLinearCoefficient,
    #[error("closed form available for k = 2..=5 only, got k = {0}")]
    UnsupportedOrder(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
