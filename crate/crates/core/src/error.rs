use thiserror::Error;

/// Errors produced by the geometric kernels and the triangulation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point outside the open unit disk: |z| = {0}")]
    Domain(f64),
    #[error("argument outside the domain of {what}: {value}")]
    Argument { what: &'static str, value: f64 },
    #[error("degenerate triangle: the three points are collinear")]
    DegenerateTriangle,
    #[error("circumcircle meets the ideal boundary; no compact circumdisk")]
    NoCompactCircumdisk,
    #[error("invalid pants graph: {0}")]
    InvalidGraph(String),
    #[error("invalid Fenchel-Nielsen length for curve {index}: {value}")]
    InvalidLength { index: usize, value: f64 },
    #[error("invalid genus {0}")]
    InvalidGenus(usize),
    #[error("enumeration radius cap {cap} reached (needed {needed})")]
    RadiusCap { cap: f64, needed: f64 },
    #[error("{what} cap {cap} exceeded")]
    EnumerationCap { what: &'static str, cap: usize },
    #[error("invalid epsilon {0}")]
    InvalidEpsilon(f64),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("cylinder of length {length} is not {expected}")]
    WrongClassification { length: f64, expected: &'static str },
    #[error("mesh spacing {delta} exceeds the allowed maximum {max}")]
    Mesh { delta: f64, max: f64 },
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("cluster decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("invalid embedding: {0}")]
    Embedding(String),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("not hyperbolizable: {0}")]
    NotHyperbolizable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
