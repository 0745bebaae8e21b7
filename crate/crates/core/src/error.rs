//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IcosaError {
    #[error("forms are not proportional: {0}")]
    NotProportional(String),
    #[error("group closure exceeded {0} projective elements; bad generator")]
    ClosureOverflow(usize),
    #[error("root finding failed: {0}")]
    RootFindingFailure(String),
    #[error("2x2 coefficient system is singular (|det| = {det:.3e})")]
    SingularSystem { det: f64 },
    #[error("division by near-zero invariant value at z = {0}")]
    DivisionNearZero(String),
    #[error("root census mismatch: {0}")]
    RootCountMismatch(String),
    #[error("expanded orbit has {got} points, expected {expected}")]
    OrbitSizeError { got: usize, expected: usize },
    #[error("orbit matches neither polyhedron pattern")]
    Unclassifiable,
    #[error("tetrahedra do not partition the target orbit: {0}")]
    PartitionFailure(String),
    #[error("iteration did not converge within {0} steps")]
    NonConvergence(usize),
    #[error("no fixed point found in bracket [{0}, {1}]")]
    NotFound(f64, f64),
    #[error("local degree fit inconclusive (residual {0:.3e})")]
    Inconclusive(f64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, IcosaError>;
