use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("sample count mismatch: curve has {curve}, field has {field}")]
    LengthMismatch { curve: usize, field: usize },

    #[error("non-finite state encountered at t = {t}")]
    NonFinite { t: f64 },

    #[error("lift residual {max_residual:e} exceeds tolerance {tolerance:e}; reduce the step")]
    LiftResidual { max_residual: f64, tolerance: f64 },

    #[error("trajectory is not anchored at the origin (|x(0)| = {offset:e})")]
    NotAnchored { offset: f64 },

    #[error("rank deficiency: vector {index} is linearly dependent on its predecessors")]
    RankDeficient { index: usize },

    #[error("degenerate frame at sample {sample}: {reason}")]
    DegenerateFrame { sample: usize, reason: String },

    #[error("distribution `{name}` is not totally geodesic; isocline check does not apply")]
    NotTotallyGeodesic { name: String },

    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
