use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("position vector must have at least one component")]
    EmptyPosition,

    #[error("non-finite component {value} at index {index}")]
    NonFiniteComponent { index: usize, value: f64 },

    #[error("invalid bounds at dimension {dim}: lower {lower} must be below upper {upper}")]
    InvalidBounds { dim: usize, lower: f64, upper: f64 },

    #[error("objective returned NaN at {input:?}")]
    NanObjective { input: Vec<f64> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown algorithm `{name}`; supported: {supported}")]
    UnknownAlgorithm { name: String, supported: String },

    #[error("invalid statistics input: {0}")]
    Stats(String),
}
