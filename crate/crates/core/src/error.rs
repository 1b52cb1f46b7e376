use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("alpha(psi; t) is singular at t = {0}: derivative vanishes")]
    Singular(f64),
    #[error("series or integral diverges: {0}")]
    Divergent(String),
    #[error("tolerance {tol:e} unreachable: {what}")]
    ToleranceUnreachable { what: String, tol: f64 },
    #[error("value {y:e} outside the range of the tail integral (max {max:e})")]
    Range { y: f64, max: f64 },
    #[error("index overflow: {0}")]
    IndexOverflow(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
