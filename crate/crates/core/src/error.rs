use thiserror::Error;

pub type Result<T> = std::result::Result<T, WalkError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("mass term R = {0} is outside [0, 1]")]
    Domain(f64),

    #[error("no real coin for R = {mass}, rho = {rho}: solvability margin {discriminant:e} is negative")]
    NoRealCoin { mass: f64, rho: f64, discriminant: f64 },

    #[error("invalid lattice size {n}: {reason}")]
    Size { n: usize, reason: &'static str },

    #[error("dimension mismatch: operator is for n = {expected}, field has n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("path enumeration over {steps} steps exceeds the cap of {cap}")]
    Budget { steps: usize, cap: usize },

    #[error("group algebra elements belong to different groups (D_{left} vs D_{right})")]
    GroupMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("probability drift {drift:e} exceeds tolerance {tolerance:e}")]
    ConservationDrift { drift: f64, tolerance: f64 },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl WalkError {
    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        WalkError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
