use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    InvalidMesh(&'static str),

    #[error("interval length {length} is not an integer multiple of 1/N for N = {n}")]
    MeshIncompatible { length: f64, n: u64 },

    #[error("point {x} is outside the open interval ({a}, {b})")]
    Domain { x: f64, a: f64, b: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("spectral parameter lies within {distance:e} of the segment [-1, 1]")]
    UnstableParameter { distance: f64 },

    #[error("operator size {0} is too small")]
    Size(usize),

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("numerically singular system: pivot magnitude {pivot:e}")]
    NumericalSingularity { pivot: f64 },

    #[error("relative residual {residual:e} exceeds tolerance {tolerance:e}")]
    Inaccurate { residual: f64, tolerance: f64 },

    #[error("evaluation point {x} is within {distance:e} of mesh node {node}")]
    PoleProximity { x: f64, node: usize, distance: f64 },

    #[error("degenerate data for rate fit: {0}")]
    DegenerateData(&'static str),

    #[error("error equation residual {residual:e} exceeds {tolerance:e}")]
    InternalConsistency { residual: f64, tolerance: f64 },
}
