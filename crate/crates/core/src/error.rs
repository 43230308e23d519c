use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lattice elements must have at least one coordinate")]
    EmptyElement,

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("argument list is empty")]
    EmptyArguments,

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("degree {n} has the wrong parity (expected {expected})")]
    Parity { n: usize, expected: &'static str },

    #[error("scale must be nonnegative and finite, got {0}")]
    InvalidScale(f64),

    #[error("multi-index {index:?} is invalid for order {order} on dimension {dim}")]
    InvalidIndex {
        index: Vec<usize>,
        order: usize,
        dim: usize,
    },

    #[error("codomain vector has length {found}, expected {expected}")]
    CodomainMismatch { expected: usize, found: usize },

    #[error("no mixed multi-index exists for domain dimension {d} and degree {n}")]
    NoMixedIndex { d: usize, n: usize },

    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),

    #[error("need at least {needed} samples, found {found}")]
    TooFewSamples { needed: usize, found: usize },

    #[error("sample nodes must be distinct and positive, offending node {0}")]
    BadNode(f64),

    #[error("linear system is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
