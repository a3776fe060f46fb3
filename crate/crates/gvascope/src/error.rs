//! Crate-wide error type.

use thiserror::Error;

use crate::accounts::Rule;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is not valid UTF-8")]
    InvalidUtf8,

    #[error("malformed header: missing column(s) {missing:?}")]
    MalformedHeader { missing: Vec<String> },

    #[error("row {row}, column '{column}': unparseable numeral '{value}'")]
    Numeral {
        row: usize,
        column: String,
        value: String,
    },

    #[error("row {row}: {rule} violated")]
    InvalidRecord { row: usize, rule: Rule },

    #[error("row {row}: duplicate record for industry '{slug}' in year {year}")]
    DuplicateRecord {
        row: usize,
        slug: String,
        year: i32,
    },

    #[error("row {row}: no year column and no default year configured")]
    MissingYear { row: usize },

    #[error("unknown year {0}")]
    UnknownYear(i32),

    #[error("empty input")]
    EmptyInput,

    #[error("degenerate regression input: {0}")]
    DegenerateFit(String),

    #[error("non-positive value {value} for {what}")]
    NonPositiveValue { what: &'static str, value: f64 },

    #[error("invalid log base {0}: must be finite and > 1")]
    InvalidLogBase(f64),

    #[error("invalid threshold {0}: must be finite and >= 0")]
    InvalidThreshold(f64),

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}
