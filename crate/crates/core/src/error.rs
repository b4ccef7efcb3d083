use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Errors raised by the monoid-expression algebra and its consumers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("unsupported expression shape: {0}")]
    UnsupportedShape(String),
    #[error("purity required: {0}")]
    PurityRequired(String),
    #[error("no prismality certificate: {0}")]
    CertificateUnavailable(String),
    #[error("membership undecided for {0} within the search budget")]
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("invalid rooted tree: {0}")]
    InvalidTree(String),
    #[error("element does not match the parasemifield (expected {expected} coordinates, found {found})")]
    SpecMismatch { expected: usize, found: usize },
    #[error("tree with {vertices} vertices exceeds the chain-extension cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("the basis tuple has no inverse pair in its first two positions")]
    NoInversePair,
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relation {relation}: exponent vector has length {found}, expected {expected}")]
    Length {
        relation: usize,
        expected: usize,
        found: usize,
    },
    #[error("relation {relation}: negative exponent at coordinate {coordinate}")]
    NegativeExponent { relation: usize, coordinate: usize },
}
