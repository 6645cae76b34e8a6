//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series `{name}` too short: need at least {required} observations, have {actual}")]
    TooShort {
        name: String,
        required: usize,
        actual: usize,
    },

    #[error("series `{name}` has a non-finite value at index {index}")]
    NonFinite { name: String, index: usize },

    #[error("cannot take logs of `{name}`: value {value} at index {index} is not strictly positive")]
    NonPositive {
        name: String,
        index: usize,
        value: f64,
    },

    #[error("series lengths differ: `{left_name}` has {left}, `{right_name}` has {right}")]
    LengthMismatch {
        left_name: String,
        left: usize,
        right_name: String,
        right: usize,
    },

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("design matrix is rank deficient ({detail})")]
    SingularDesign { detail: String },

    #[error("insufficient observations: need at least {required}, have {available}")]
    InsufficientObservations { required: usize, available: usize },

    #[error("no critical values for effective sample size {effective_t}; response surfaces are served for T >= 20")]
    UnsupportedSampleSize { effective_t: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("missing column `{name}` in CSV header")]
    MissingColumn { name: String },

    #[error("months are not consecutive: expected {expected} after {previous}, found {found}")]
    MonthGap {
        previous: String,
        expected: String,
        found: String,
    },

    #[error("row {row}, column `{column}`: value {value} is not strictly positive")]
    NonPositiveCell {
        row: usize,
        column: String,
        value: f64,
    },

    #[error("row {row}, column `{column}`: cannot parse `{content}`")]
    ParseCell {
        row: usize,
        column: String,
        content: String,
    },

    #[error("unsupported output format `{0}` (expected markdown, csv, or json)")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of a statistical computation on otherwise valid
    /// inputs (degenerate regressions, too few observations), as opposed to
    /// configuration, schema, or I/O problems.
    pub fn is_test_level(&self) -> bool {
        matches!(
            self,
            Error::TooShort { .. }
                | Error::NonFinite { .. }
                | Error::NonPositive { .. }
                | Error::LengthMismatch { .. }
                | Error::SingularDesign { .. }
                | Error::InsufficientObservations { .. }
                | Error::UnsupportedSampleSize { .. }
                | Error::DegenerateInput(_)
        )
    }
}
