use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension n = {n} outside the range allowed for {what}")]
    Dimension { what: &'static str, n: u32 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("derivative of {0} is singular at x = 0")]
    DerivativeSingular(&'static str),

    #[error("interval division by an interval containing zero")]
    DivisionByZero,

    #[error("square root of a negative interval")]
    NegativeSqrt,

    #[error("unknown lemma or expression id `{0}`")]
    UnknownLemma(String),

    #[error("empty domain or non-positive tolerance")]
    EmptyDomain,

    #[error("degenerate frame at grid index {0}")]
    DegenerateFrame(usize),

    #[error("time step collapsed after {0} consecutive halvings")]
    StepCollapse(usize),

    #[error("{0}")]
    Unsupported(String),

    #[error("empty trace")]
    EmptyTrace,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
