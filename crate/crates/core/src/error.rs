use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("invalid lattice parameter: {0}")]
    InvalidParameter(String),
    #[error("lattice point {index} is not greater than 1")]
    NotAboveOne { index: usize },
    #[error("lattice points {index} and {} are not strictly increasing", .index + 1)]
    NotIncreasing { index: usize },
}

/// A monotone map was applied outside its domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{function} is undefined on {argument}")]
pub struct DomainError {
    pub function: &'static str,
    pub argument: String,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("invalid table parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("bad magic: not a SORN table file")]
    BadMagic,
    #[error("unsupported table format version {found} (expected {expected})")]
    VersionMismatch { found: u16, expected: u16 },
    #[error("truncated table file: need {needed} bytes, found {available}")]
    Truncated { needed: usize, available: usize },
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("malformed table file: {0}")]
    Malformed(String),
    #[error("table set cannot be serialized: {0}")]
    NotSerializable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SornError {
    #[error("SORN sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tables were generated for a different lattice")]
    LatticeMismatch,
}
