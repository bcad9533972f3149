//! Crate-wide error type.

use thiserror::Error;

use crate::nsa::StopReason;

/// Errors reported by the library. Algorithmic contract violations are
/// reported, never panicked; panics are reserved for internal invariant
/// breakage (e.g. mixing radicands inside one computation).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid radicand {0}: must be squarefree and at least 2")]
    InvalidRadicand(u64),

    #[error("mixed radicands {0} and {1}: one computation uses a single radicand")]
    RadicandMismatch(u64, u64),

    #[error("point ({x}, {y}) lies outside the unit square")]
    OutOfDomain { x: String, y: String },

    #[error("the map is not defined on boundary point ({0})")]
    BoundaryPoint(StopReason),

    #[error("operation requires rational coordinates")]
    NotRational,

    #[error("invalid digit: n and m must be at least 1")]
    InvalidDigit,

    #[error("digit sequence must be nonempty")]
    EmptyDigits,

    #[error("projective image is degenerate: the third homogeneous coordinate vanishes")]
    DegenerateImage,

    #[error("stage {k} exceeds the context cap {cap}")]
    KOutOfRange { k: usize, cap: usize },

    #[error("orbit recovery denominator vanishes at stage {k}")]
    DegenerateDenominator { k: usize },

    #[error("base point orbit stops at step {at}; a non-stopping orbit is required")]
    BasePointStops { at: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
