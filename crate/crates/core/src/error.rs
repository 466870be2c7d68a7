use thiserror::Error;

/// Errors raised by the algebra engine and the session parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch")]
    RingMismatch,
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("expression too large at line {line}, column {col}: {msg}")]
    TooLarge { line: usize, col: usize, msg: String },
    #[error("unknown variable `{name}` at line {line}, column {col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("coefficient not in field {field} at line {line}, column {col}: {msg}")]
    CoefficientNotInField {
        field: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("zero polynomial has no lowest form")]
    ZeroPolynomial,
    #[error("unmapped variable `{0}`")]
    UnmappedVariable(String),
    #[error("the unit ideal has no Krull dimension")]
    UnitIdeal,
    #[error("generator `{0}` is not a monomial")]
    NonMonomial(String),
    #[error("reduction step budget exhausted")]
    BudgetExhausted,
    #[error("module has infinite length")]
    InfiniteLength,
    #[error("support is not concentrated at the origin")]
    SupportNotAtOrigin,
    #[error("ideal is not contained in the maximal ideal of the origin")]
    NotInMaximalIdeal,
    #[error("Hilbert-Samuel differences did not stabilize below n = {cap}")]
    NoStabilization { cap: usize },
    #[error("module dimension {dim} exceeds the requested degree {degree}")]
    DimensionExceedsDegree { dim: usize, degree: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("extension is not module-finite over the base ring")]
    NotModuleFinite,
    #[error("residual support: {0}")]
    ResidualSupport(String),
    #[error("strict transforms meet in positive dimension in chart {chart}")]
    SupportNotFinite { chart: usize },
    #[error("chart index {index} out of range 1..={dim}")]
    ChartIndex { index: usize, dim: usize },
    #[error("name collision: `{0}`")]
    NameCollision(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
