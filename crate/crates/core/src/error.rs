use thiserror::Error;

/// Errors raised by the library.
///
/// Analyses that have a yes/no answer (validation, axiom checks, greediness
/// tests) report their verdict as data and never use this type for a
/// negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point index {index} out of range for a ground set of {len} points")]
    PointOutOfRange { index: usize, len: usize },

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("{what} has size {size}, which exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a valid ultra triple: {0}")]
    NotUltrametric(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid equivalence hierarchy: {0}")]
    InvalidHierarchy(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("prefix is not greedy: {0}")]
    NotGreedy(String),

    #[error("no strong exchange element exists for the given pair")]
    NoStrongExchange,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
