use thiserror::Error;

pub type Result<T, E = SteeringError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum SteeringError {
    /// A scalar parameter lies outside its documented range.
    #[error("{name} = {value} is outside the allowed range {range}")]
    Range {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Malformed input: non-unit vectors, non-Hermitian matrices, length mismatches.
    #[error("validation failed: {0}")]
    Validation(String),

    /// The request would exceed the exhaustive-enumeration budget.
    #[error("{what}: N = {n} exceeds the limit of {limit}")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("cannot canonicalize: {0}")]
    Canonicalization(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl SteeringError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        SteeringError::Validation(msg.into())
    }

    /// True for errors caused by a bad request rather than the environment.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            SteeringError::Range { .. }
                | SteeringError::Validation(_)
                | SteeringError::Canonicalization(_)
                | SteeringError::Json(_)
        )
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, SteeringError::Capacity { .. })
    }
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(SteeringError::Range { name, value, range })
    }
}
