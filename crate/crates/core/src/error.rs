use crate::report::AxiomReport;

/// Errors raised by constructors, checkers and the file front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("arrows ({0},{1}) and ({2},{3}) are not composable")]
    NotComposable(usize, usize, usize, usize),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("consistency error: {what} (residual {residual:.3e})")]
    Consistency { what: String, residual: f64 },

    #[error("refused: {reason}")]
    Refused {
        reason: String,
        report: Option<Box<AxiomReport>>,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
