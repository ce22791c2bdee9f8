use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("information matrix is singular")]
    SingularInformation,

    #[error("objective returned a non-finite value at iteration {0}")]
    NonFiniteObjective(usize),

    #[error("degenerate design: regressor has zero variance")]
    DegenerateDesign,

    #[error("response {index} is not positive ({value})")]
    NonPositiveResponse { index: usize, value: f64 },

    #[error("quadrature minimisation unstable: restarts disagree by {0:e}")]
    QuadratureUnstable(f64),

    #[error("unknown beta* configuration `{0}`")]
    UnknownConfig(String),

    #[error("input must be strictly positive: {0}")]
    NonPositiveInput(String),

    #[error("scale factor must be strictly positive, got {0}")]
    NonPositiveScale(f64),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("bootstrap distribution is degenerate (all resampled statistics equal)")]
    DegenerateBootstrap,

    #[error("observed values have zero variance")]
    DegenerateObservations,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid experiment spec:\n  - {}", .0.join("\n  - "))]
    InvalidSpec(Vec<String>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
        Error::Parse {
            line,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
