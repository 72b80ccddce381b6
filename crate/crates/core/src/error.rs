use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word {word} is not reduced")]
    NotReduced { word: String },
    #[error("size mismatch: expected n = {expected}, found n = {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("n = {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid ancestry: {0}")]
    InvalidAncestry(String),
    #[error("invalid preancestry: {0}")]
    InvalidPreancestry(String),
    #[error("element is not a signed monomial")]
    NotMonomial,
    #[error("permutation {perm} blocks; split it with decompose_blocks first")]
    Blocking { perm: String },
    #[error("element is not in the coset acute(sigma)·Quat")]
    NotInCoset,
    #[error("near-boundary: {0}")]
    NearBoundary(String),
    #[error("matrix is not in the expected cell: {0}")]
    NotInCell(String),
    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
