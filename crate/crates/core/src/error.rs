use thiserror::Error;

/// Everything that can go wrong while building families or answering queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid set {elems:?}: {reason}")]
    InvalidSet { elems: Vec<u32>, reason: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("generator {gen:?} is invalid for n={n}, r={r}: {reason}")]
    InvalidGenerator {
        gen: Vec<u32>,
        n: u32,
        r: u32,
        reason: String,
    },

    #[error("generator list is empty")]
    EmptyFamily,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("X = {0:?} is not a canonical minimal set; use count_hits instead")]
    NonCanonical(Vec<u32>),

    #[error("X = {0:?} lies outside the eventually-EKR classification (needs X not inside [2,r+1] and |X| <= r)")]
    OutsideHypothesis(Vec<u32>),

    #[error("scale guard exceeded: {what} = {count} > {limit}")]
    ScaleGuard {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
