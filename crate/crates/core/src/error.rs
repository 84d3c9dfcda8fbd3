use thiserror::Error;

/// Errors raised by the geometry, cone, integral and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("nearest-point iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("lattice enumeration of {points} points exceeds the cap of {cap}")]
    EnumerationCap { points: u128, cap: u128 },

    #[error("theorem hypothesis violated: need 0 <= gamma < d_m, got gamma = {gamma}, d_m = {d_m}")]
    HypothesisViolated { gamma: f64, d_m: f64 },

    #[error("membership uncertifiable at this resolution (band {band:.3e} > tolerance {tolerance:.3e}); use a finer grid")]
    Uncertifiable { band: f64, tolerance: f64 },

    #[error("integral diverges structurally; handle at caller (cone contains the line through {lineality:?})")]
    NotPointed { lineality: Vec<f64> },

    #[error("singular ray matrix")]
    SingularRays,

    #[error("linear program is {0}")]
    Lp(LpFailure),

    #[error("linear program on face {face} failed: {reason}")]
    LpFace { face: usize, reason: LpFailure },

    #[error("tail bound unavailable: face maximum {face_max:.3e} is not negative (divergent or marginal)")]
    TailUnavailable { face_max: f64 },

    #[error("hull region is unbounded: {0}")]
    UnboundedHull(String),

    #[error("exponent {alpha:?} lies in the hull; no separating direction exists")]
    InHull { alpha: Vec<i64> },

    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("figures are 2D only (got dimension {0})")]
    NotTwoDimensional(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpFailure {
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl std::fmt::Display for LpFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpFailure::Infeasible => f.write_str("infeasible"),
            LpFailure::Unbounded => f.write_str("unbounded"),
            LpFailure::IterationLimit => f.write_str("stalled at the iteration limit"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
