use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("transform length {0} is not 3-smooth")]
    UnsupportedLength(usize),
    #[error("input of length {len} does not fit in a transform of length {n}")]
    InputTooLong { len: usize, n: usize },
    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("degree bound violated: {0}")]
    DegreeBound(String),
    #[error("block index {index} out of range for {len} blocks")]
    BlockOutOfRange { index: usize, len: usize },
    #[error("transform of block {0} has not been computed")]
    MissingTransform(usize),
    #[error("block size mismatch: {0} vs {1}")]
    BlockSizeMismatch(usize, usize),
    #[error("constant term must be 1, got {0}")]
    NotNormalized(String),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("block count must be at least 1")]
    ZeroBlocks,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree {0} is odd")]
    OddDegree(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
