use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a rational number: {0:?}")]
    BadNumber(String),
    #[error("value {0} outside [0,1]")]
    OutOfUnit(Rat),
    #[error("point {x} outside the domain {domain}")]
    OutOfDomain { x: Rat, domain: String },
    #[error("no left limit at the left end of the domain ({0})")]
    NoLeftLimit(Rat),
    #[error("no right limit at the right end of the domain ({0})")]
    NoRightLimit(Rat),
    #[error("degenerate interval [{0}, {1}]")]
    DegenerateInterval(Rat, Rat),
    #[error("invalid summand {summand}: {reason}")]
    BadSummand { summand: String, reason: &'static str },
    #[error("invalid function: {0}")]
    BadFunction(String),
    #[error("domains differ: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("computation needs an irrational point ({0})")]
    Irrational(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

/// `[lo, hi]`, as used in error messages.
pub fn interval(lo: &Rat, hi: &Rat) -> String {
    format!("[{lo}, {hi}]")
}

impl Error {
    /// True for errors caused by malformed input text rather than bad values.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::BadNumber(_) | Error::Parse { .. } | Error::UnknownName(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
