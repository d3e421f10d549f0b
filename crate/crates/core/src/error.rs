use thiserror::Error;

use crate::grid::{Adjacency, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digital image must contain at least one point")]
    EmptyImage,
    #[error("point dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate point {0}")]
    DuplicatePoint(Point),
    #[error("point {0} is not in the image")]
    PointNotInImage(Point),
    #[error("adjacency {adjacency} is not valid in dimension {dim}")]
    InvalidAdjacency { adjacency: Adjacency, dim: usize },
    #[error("operand point set is empty")]
    EmptySet,
    #[error("domain/codomain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("value {0} lies outside the codomain")]
    ValueOutsideCodomain(Point),
    #[error("map is not a self-map")]
    NotSelfMap,
    #[error("subdivision factor must be positive, got {0}")]
    InvalidSubdivision(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("multivalued map is not verifiably continuous within r <= {r_max}")]
    NotVerifiablyContinuous { r_max: u32 },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
