use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radicand {0} is not a non-square integer >= 2")]
    InvalidRadicand(u64),
    #[error("mismatched radicands: {0} vs {1}")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("r = {0} is a perfect square; use the exact square-case value")]
    PerfectSquare(u64),
    #[error("r = {0} is not a perfect square")]
    NotPerfectSquare(u64),
    #[error("zero total multiplicity")]
    ZeroMultiplicity,
    #[error("multiplicity pattern with m = M = 0 does not meet the point set")]
    EmptyPattern,
    #[error("Xu-type bound needs m >= 2, got {0}")]
    XuMultiplicity(u64),
    #[error("curve class needs k >= 1")]
    ZeroDegree,
    #[error("need r >= {min}, got {got}")]
    PointCount { min: u64, got: u64 },
    #[error("delta must be {0}")]
    InvalidDelta(&'static str),
    #[error("case {case} does not match pattern (m = {m}, M = {big_m})")]
    CaseMismatch { case: String, m: u64, big_m: u64 },
    #[error("Roth b) only applies to distinct multiplicities")]
    EqualMultiplicities,
    #[error("{0}")]
    OutOfRange(String),
    #[error("malformed rational '{0}'")]
    MalformedRational(String),
    #[error("unknown filter '{0}'")]
    UnknownFilter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
