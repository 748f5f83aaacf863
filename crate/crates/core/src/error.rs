use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate line: forms {0} and {1} are proportional")]
    DuplicateLine(usize, usize),
    #[error("non-essential arrangement: the forms span a space of dimension {0} < 3")]
    NonEssential(usize),
    #[error("an arrangement needs at least 3 lines, got {0}")]
    TooFewLines(usize),
    #[error("unknown builtin arrangement '{0}'")]
    UnknownBuiltin(String),
    #[error("zero pencil")]
    ZeroPencil,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("not a fat-point divisor: {0}")]
    NotFatPoint(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("multinet condition ({condition}) fails: {witness}")]
    Multinet { condition: String, witness: String },
    #[error("search space too large: {0}")]
    SearchGuard(String),
    #[error("not a pencil: h0(A) = {0}, expected 2")]
    NotAPencil(usize),
    #[error("net hypothesis k >= m fails: k = {k} < m = {m}")]
    NetHypothesis { k: usize, m: usize },
    #[error("component rejected by H1 oracle: {0}")]
    OracleRejected(String),
    #[error("genericity failed after {0} draws: {1}")]
    Degenerate(usize, String),
    #[error("modular rank not confirmed: {0}")]
    Unconfirmed(String),
    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
