use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation images {0:?} are not a bijection")]
    NotAPermutation(Vec<usize>),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("guard `{guard}` exceeded: {actual} > {limit}")]
    GuardExceeded {
        guard: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("objects belong to different groups")]
    GroupMismatch,

    #[error("point {point} out of range for a set of size {size}")]
    PointOutOfRange { point: usize, size: usize },

    #[error("action is not a homomorphism: {0}")]
    NotAnAction(String),

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid measured point: {0}")]
    InvalidCoordinates(String),

    #[error("poset map is invalid: {0}")]
    InvalidMap(String),

    #[error("isomorphism search exceeded {0} nodes")]
    SearchBudgetExceeded(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checked integer arithmetic overflowed; the caller retries with a wider type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow")]
pub struct Overflow;
