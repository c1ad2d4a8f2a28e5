use thiserror::Error;

use crate::model::ModelError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model: {}", display_list(.0))]
    InvalidModel(Vec<ModelError>),

    #[error("slope must be nonzero")]
    ZeroSlope,

    #[error("level index {index} out of range for {len} levels")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("all slopes must share one sign")]
    MixedSlopeSigns,

    #[error("crossing slopes must be positive, got {0}")]
    NonPositiveSlope(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("wrong sign: {0}")]
    InvalidSign(String),

    #[error("gamma function has a pole at {re}{im:+}i")]
    PoleOfGamma { re: f64, im: f64 },

    #[error("time must be positive for a singular profile, got t = {0}")]
    NonPositiveTime(f64),

    #[error("unknown energy profile `{0}`")]
    UnknownProfile(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular linear system in Cayley step")]
    SingularSolve,

    #[error("state vector has zero or non-finite norm")]
    DegenerateState,

    #[error("norm drift {drift:e} exceeds {limit:e}")]
    NormDriftExceeded { drift: f64, limit: f64 },

    #[error("time grid of {0:e} steps is too large")]
    GridTooLarge(f64),

    #[error("invalid propagation config: {0}")]
    InvalidConfig(String),
}

fn display_list(errors: &[ModelError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
