use thiserror::Error;

/// Errors raised by the counting, oracle, recurrence, and statistics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("allowed degree set is empty; the tree family is vacuous")]
    EmptyAllowedSet,

    #[error("degree {0} is invalid; degrees must be positive integers")]
    InvalidDegree(u32),

    #[error("coefficient index {index} exceeds truncation order {order}")]
    CoefficientOutOfRange { index: usize, order: usize },

    #[error("vertex count {n} is invalid: {reason}")]
    InvalidVertexCount { n: usize, reason: &'static str },

    #[error("n = {n} exceeds the exhaustive-enumeration guard (max {max})")]
    GuardViolation { n: usize, max: usize },

    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("edge list is not a tree on {n} vertices: {reason}")]
    NotATree { n: usize, reason: &'static str },

    #[error("{what} produced a non-integral value; exact arithmetic is inconsistent")]
    NonIntegral { what: &'static str },

    #[error("need at least {needed} terms, got {available}")]
    InsufficientData { needed: usize, available: usize },

    #[error("leading coefficient vanishes at index {index} (singular point)")]
    SingularPoint { index: i64 },

    #[error("recurrence step at index {index} does not divide exactly")]
    InexactDivision { index: i64 },

    #[error("recurrence prefix has {got} terms, needs {needed}")]
    ShortPrefix { needed: usize, got: usize },

    #[error("sequence term at index {index} is zero; ratio analysis needs nonzero terms")]
    ZeroTerm { index: i64 },

    #[error("limiting degree distribution is undefined for {0}")]
    DegenerateDistribution(&'static str),

    #[error("no tree on {n} vertices satisfies the degree rule")]
    EmptyFamily { n: usize },

    #[error("mixed moments need distinct degrees, got d1 = d2 = {0}; use the single-variable form")]
    SameDegree(u32),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
