use thiserror::Error;

use crate::zeros::ZeroKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("|z| = {modulus} exceeds the series domain cap {cap}")]
    DomainCapExceeded { modulus: f64, cap: f64 },

    #[error("power series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },

    #[error("value is not finite at z = 0 for order {nu}")]
    ZeroArgument { nu: f64 },

    #[error("invalid order nu = {nu}: {reason}")]
    InvalidOrder { nu: f64, reason: &'static str },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("found {found} of {requested} zeros of {kind} before reaching x = {limit}")]
    ScanExhausted { kind: ZeroKind, found: usize, requested: usize, limit: f64 },

    #[error("r = {r} lies outside the open interval ({lo}, {hi})")]
    OutOfInterval { r: f64, lo: f64, hi: f64 },

    #[error("denominator magnitude {magnitude:e} at r = {r} is too close to a pole")]
    NearPole { r: f64, magnitude: f64 },

    #[error("no sign change of J - beta on [{lo}, {hi}] (values {f_lo}, {f_hi})")]
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
