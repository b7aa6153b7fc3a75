use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("record has no <Y> values; this quantity requires Y")]
    RequiresY,

    #[error("series too short: {len} samples, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },

    #[error("no defined phases in the selected site set")]
    AllPhasesUndefined,

    #[error("invalid config: {0}")]
    Config(String),

    #[error("linear algebra failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
