use thiserror::Error;

use crate::config::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed configuration: {0}")]
    Shape(String),

    #[error("configuration rejected: {0}")]
    RejectsInvalid(ValidationReport),

    #[error("index {index} out of range for {dim} projective factors")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NonSquare { rows: usize, row: usize, cols: usize },

    /// An exact division left a remainder. Always an implementation bug.
    #[error("inexact division in {context}: {numerator} / {denominator}")]
    InternalInexactDivision {
        context: &'static str,
        numerator: i128,
        denominator: i128,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("record {0:?} carries no Hodge numbers")]
    MissingHodge(String),

    #[error("record {0:?} has no computed invariants")]
    NotComputed(String),

    #[error("duplicate id {0:?} in Hodge table")]
    DuplicateId(String),

    #[error("record {id:?}: {m}x{k} configuration does not fit the {rows}x{cols} feature frame")]
    FrameOverflow {
        id: String,
        m: usize,
        k: usize,
        rows: usize,
        cols: usize,
    },

    #[error("invalid value {value:?} for {what}")]
    Parse { what: &'static str, value: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn inexact(context: &'static str, numerator: i128, denominator: i128) -> Self {
        Error::InternalInexactDivision {
            context,
            numerator,
            denominator,
        }
    }
}

/// Divides `numerator` by `denominator`, failing loudly on any remainder.
pub(crate) fn exact_div(context: &'static str, numerator: i128, denominator: i128) -> Result<i128> {
    if denominator == 0 || numerator % denominator != 0 {
        return Err(Error::inexact(context, numerator, denominator));
    }
    Ok(numerator / denominator)
}

pub(crate) fn to_i64(context: &'static str, value: i128) -> Result<i64> {
    i64::try_from(value).map_err(|_| Error::Overflow(context))
}
