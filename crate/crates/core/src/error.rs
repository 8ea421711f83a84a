use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("element index {index} is outside a ground set of size {size}")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("ground set has {size} elements; at most {cap} are supported here")]
    SizeCap { size: usize, cap: usize },

    #[error("subset masks are over ground sets of different sizes ({left} and {right})")]
    MismatchedGround { left: usize, right: usize },

    #[error("bit pattern {bits:#x} does not fit a ground set of size {size}")]
    MaskOutOfRange { bits: u64, size: usize },

    #[error("not a delta-matroid: {0}")]
    NotDeltaMatroid(String),

    #[error("operation requires a normal delta-matroid (the empty set must be feasible)")]
    NotNormal,

    #[error("operation requires a non-trivial delta-matroid")]
    Trivial,

    #[error("labels `{0}` appear on both sides of a direct sum")]
    LabelCollision(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("{0}")]
    OutOfRange(String),
}
