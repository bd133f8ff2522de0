use thiserror::Error;

use crate::labels::LabelSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground sets differ: {0} vs {1}")]
    GroundMismatch(LabelSet, LabelSet),
    #[error("grounds overlap: {0} and {1}")]
    OverlappingGrounds(LabelSet, LabelSet),
    #[error("{0} is not a subset of the ground {1}")]
    NotASubset(LabelSet, LabelSet),
    #[error("invalid set composition: {0}")]
    InvalidComposition(String),
    #[error("invalid preposet: {0}")]
    InvalidPreposet(String),
    #[error("invalid two-block split: {0}")]
    BadSplit(String),
    #[error("{0} is not obtained by merging contiguous lumps of {1}")]
    NotCoarsening(String, String),
    #[error("invalid relabeling: {0}")]
    InvalidBijection(String),
    #[error("cannot convert basis {from} to {to}")]
    CrossAlgebra { from: String, to: String },
    #[error("operands are in different bases: {0} vs {1}")]
    BasisMismatch(String, String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the ground set must be non-empty")]
    EmptyGround,
    #[error("n = {n} exceeds the configured bound {max}")]
    ResourceLimit { n: usize, max: usize },
    #[error("unknown chamber {0}")]
    UnknownChamber(String),
    #[error("functional does not satisfy the Steinmann relations")]
    NotSteinmann,
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by malformed input rather than by a violated
    /// mathematical precondition.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::UnknownLabel(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
