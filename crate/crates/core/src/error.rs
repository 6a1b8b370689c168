use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("projection matrix does not have full row rank")]
    NotSurjective,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("label set {0:?} is not a face of the polytope")]
    NotAFace(Vec<usize>),
    #[error("point lies outside the projected polytope")]
    PointOutsideQ,
    #[error("parts of a common refinement have different supports")]
    SupportMismatch,
    #[error("cell is not part of the chamber complex")]
    CellNotInComplex,
    #[error("search cap of {cap} nodes exceeded")]
    CapExceeded { cap: usize },
    #[error("cone is not a member of the host fan")]
    ConeNotInHost,
    #[error("cone subset is not contained in the fan")]
    NotASubset,
    #[error("ray {0:?} is not primitive")]
    NonPrimitiveRay(Vec<String>),
    #[error("fan is not complete")]
    NotComplete,
    #[error("sign vectors do not match the arrangement")]
    ArrangementMismatch,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("configuration is not full dimensional")]
    NotFullDimensional,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
