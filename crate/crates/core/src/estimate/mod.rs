//! Numerical estimators on chaos-game samples of the attractor.

mod cloud;
mod grid;
mod lq;

pub use cloud::{chaos_game, read_binary, write_binary, write_csv, PointCloud, CHUNK_SIZE, CLOUD_MAGIC, DEFAULT_BURN_IN};
pub use grid::{
    box_dimension, correlation_dimension, dyadic_scales, slice_dimension, DimensionReport, Method,
    MIN_SLICE_POINTS, MIN_STRIP_POINTS, SLICE_STRIPS,
};
pub use lq::{lq_density_diagnostics, lq_refinement, DensityDiagnostics, INTERVAL_TRIALS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EstimateError {
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("need at least {need} scales, got {got}")]
    TooFewScales { need: usize, got: usize },
    #[error("scale {0} is not a power of two in (0, 1]")]
    NotDyadic(String),
    #[error("scales must be distinct")]
    RepeatedScale,
    #[error("degenerate regression: {0}")]
    Degenerate(&'static str),
    #[error("strip holds {got} points, need at least {need}")]
    StripTooSparse { got: usize, need: usize },
    #[error("strip width must be at least the finest scale")]
    StripTooNarrow,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("malformed point cloud file: {0}")]
    Format(String),
}
