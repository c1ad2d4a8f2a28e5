use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("bad parameter path `{0}`")]
    BadPath(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid model at sweep value {value}: {source}")]
    InvalidModelAtPoint { value: f64, source: lzc_core::Error },
    #[error("propagation failed at sweep value {value}: {source}")]
    PropagationFailure { value: f64, source: lzc_core::Error },
    #[error("no analytic prediction available for {0}")]
    MissingAnalytic(String),
    #[error(transparent)]
    Core(#[from] lzc_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}
