use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("disconnected: the incidence graph has {0} connected pieces")]
    Disconnected(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("arithmetic genus {genus} is below the required minimum {min}")]
    GenusTooSmall { genus: i64, min: i64 },
    #[error("too many components for exhaustive search ({count} > cap {cap})")]
    TooManyComponents { count: usize, cap: usize },
    #[error("invalid subcurve: {0}")]
    InvalidSubcurve(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("coordinate mismatch: {0}")]
    CoordinateMismatch(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("incompatible action: {0}")]
    IncompatibleAction(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("trivial action: {0}")]
    TrivialAction(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("mixed delta representations")]
    MixedDelta,
}
