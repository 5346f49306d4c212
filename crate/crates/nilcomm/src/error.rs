//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("parts are not weakly decreasing at position {pos}")]
    NotWeaklyDecreasing { pos: usize },
    #[error("part at position {pos} is zero; parts must be positive")]
    ZeroPart { pos: usize },
    #[error("partitions have different weights: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },
    #[error("invalid Hilbert function: {msg}")]
    InvalidHilbert { msg: String },
    #[error("{value} is not prime")]
    NotPrime { value: u64 },
    #[error("prime {value} does not fit below 2^31")]
    PrimeTooLarge { value: u64 },
    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrices do not commute")]
    NonCommuting,
    #[error("matrices live over different fields: p={left} vs p={right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("algebra has dimension {dim} < n = {n}")]
    DeficientDimension { dim: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
