//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| element is {deviation:.3e} (tolerance {tolerance:.1e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:.3e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error(
        "state invariant violated: {invariant} off by {magnitude:.3e} (tolerance {tolerance:.1e})"
    )]
    InvalidState {
        invariant: &'static str,
        magnitude: f64,
        tolerance: f64,
    },

    #[error("point (x={x}, y={y}) lies outside the d={d} triangle: {bound} violated, value {value:.6} vs limit {limit:.6}")]
    OutOfTriangle {
        d: usize,
        x: f64,
        y: f64,
        bound: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("state is not axisymmetric: max deviation from its twirl is {deviation:.3e}")]
    NotAxisymmetric { deviation: f64 },

    #[error("Schmidt rank {k} exceeds min(d_a, d_b) = {max_rank}")]
    RankTooLarge { k: usize, max_rank: usize },

    #[error("invalid Schmidt vector: {0}")]
    InvalidSchmidtVector(String),

    #[error("witness index k = {k} must satisfy 2 <= k <= d = {d}")]
    InvalidK { k: usize, d: usize },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("no moment matrix is consistent with the constraints (best residual {residual:.3e})")]
    Infeasible { residual: f64 },
}
