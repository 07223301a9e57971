use thiserror::Error;

use crate::semigroup::ElementId;

/// Everything that can go wrong while building or relating finite semigroups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry at ({0}, {1}) is out of range")]
    OutOfRangeEntry(ElementId, ElementId),
    #[error("associativity fails at ({0}, {1}, {2})")]
    AssociativityViolation(ElementId, ElementId, ElementId),
    #[error("family {family} is undefined for order {order}")]
    UnsupportedSize { family: String, order: usize },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("requested tower depth {requested} exceeds the cap of {cap}")]
    DepthCapExceeded { requested: usize, cap: usize },
    #[error("sandwich entry {index} is out of range for a semigroup of order {order}")]
    EntryOutOfRange { index: usize, order: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ill-formed class map: {0}")]
    IllFormed(String),
    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("morphism does not satisfy its claimed kind: {0}")]
    KindViolation(String),
    #[error("property {0} is not supported here")]
    UnsupportedProperty(String),
    #[error("order {order} exceeds the cap of {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
