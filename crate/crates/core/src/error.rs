use thiserror::Error;

use crate::exact::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no value bound for parameter `{0}`")]
    MissingBinding(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("series square root needs constant term 1, found {0}")]
    SqrtConstantTerm(String),
    #[error("series inverse needs constant term 1, found {0}")]
    InverseConstantTerm(String),
    #[error("integration would produce a logarithm: z^-1 coefficient is {0}")]
    LogTerm(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("Q-family requires numeric a0, found {0}")]
    SymbolicA0(String),
    #[error("rewrite relation has vanishing leading scalar for m={m}, i={i}")]
    SingularRewrite { m: i64, i: i64 },
    #[error("exponent {exponent} lies outside the reduction window [-{window}, {window}]; use a larger window")]
    WindowTooSmall { exponent: i64, window: i64 },
    #[error("reduction oracle failed: {0}")]
    Oracle(String),
    #[error("operation requires the quartic curve t^4 - 2*c*t^2 + 1: {0}")]
    NotQuartic(String),
    #[error("Lie algebra error: {0}")]
    Algebra(String),
    #[error("operands belong to different curves (n={left} vs n={right})")]
    SpecMismatch { left: usize, right: usize },
}
