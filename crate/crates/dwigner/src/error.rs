//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by constructors and operations in this crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// The grid dimension is too small; every grid needs `N >= 2`.
    #[error("invalid grid dimension {0}: N must be at least 2")]
    InvalidDimension(usize),

    /// A basis label, grid coordinate or similar index is outside its range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix expected to be square is not.
    #[error("operator must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Input data contains NaN or infinite entries.
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    /// A state failed a physical validity check (normalization, Hermiticity,
    /// positivity, ...).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// An operator that must be unitary is not.
    #[error("operator is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    /// A line or slice manifold was given all-zero direction coefficients.
    #[error("degenerate coefficients: {0}")]
    DegenerateCoefficients(String),

    /// Composite grids are only materialized densely for small `N`.
    #[error("composite grid for N={0} too large to materialize (supported for N <= {1})")]
    GridTooLarge(usize, usize),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
