use thiserror::Error;

/// Errors raised by the numeric kernel and the hierarchy model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AhpError {
    #[error("matrix has no rows")]
    EmptyMatrix,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is not a positive finite number")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },
    #[error("diagonal entry ({index}, {index}) = {value} is not 1")]
    DiagonalNotOne { index: usize, value: f64 },
    #[error(
        "entries ({row}, {col}) = {upper} and ({col}, {row}) = {lower} are not reciprocal (product {product})"
    )]
    ReciprocityViolation {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
        product: f64,
    },
    #[error("entry ({row}, {col}) = {value} lies outside the 1/9..9 judgment scale")]
    ScaleOutOfRange { row: usize, col: usize, value: f64 },
    #[error("dimension mismatch: matrix order {matrix}, vector length {vector}")]
    DimensionMismatch { matrix: usize, vector: usize },
    #[error("random index table has no entry for order {order}")]
    OrderNotInRiTable { order: usize },
    #[error("random index table is invalid: {0}")]
    InvalidRiTable(String),
    #[error("random index simulation needs order >= 3, got {order}")]
    OrderTooSmall { order: usize },
    #[error("random index simulation needs at least one sample")]
    NoSamples,
    #[error("no judgment matrices to aggregate")]
    EmptyInput,
    #[error("order mismatch: expected {expected}, got {got}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("node {0} is a leaf and takes no judgment matrix")]
    LeafNode(String),
    #[error("node {0} is the root and has no local weight")]
    RootNode(String),
    #[error("node {0} has no siblings to absorb a weight change")]
    NoSiblings(String),
    #[error("local weight {0} is outside the open interval (0, 1)")]
    WeightOutOfRange(f64),
    #[error("node {0} has children but no judgment matrix")]
    MissingMatrix(String),
    #[error("duplicate node id {0}")]
    DuplicateNodeId(String),
    #[error("hierarchy root {0} has no children")]
    EmptyHierarchy(String),
}
