//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bracket [{lo}, {hi}] does not straddle a sign change (f: {f_lo}, {f_hi})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder failed to converge within {0} iterations")]
    NoConvergence(usize),

    #[error("invalid circle configuration: {0}")]
    InvalidConfig(String),

    #[error("mass matrix is singular: weight {index} is zero")]
    SingularMass { index: usize },

    #[error("all weights are zero")]
    AllZero,

    #[error("mode scan exceeded the hard cap of {cap} Fourier modes")]
    ModeScanCap { cap: usize },

    #[error("eigenvalue iteration failed to converge for row {0}")]
    EigenNoConvergence(usize),

    #[error("discriminant is negative ({0}) for mode {1}; arithmetic bug")]
    NegativeDiscriminant(f64, usize),

    #[error("catenary is tangent to the unit circle (no transversal intersection)")]
    Tangent,

    #[error("catenary does not intersect the unit circle")]
    NoIntersection,

    #[error("invalid angle pair: {0}")]
    DomainError(String),

    #[error("angle propagation exceeded the iteration cap of {0}")]
    IterationCap(usize),

    #[error("no bracket found for order {order}; scan grid too coarse")]
    BracketNotFound { order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
