use crate::config::Configuration;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degree {0} outside the supported range 1..=20")]
    DegreeOutOfRange(usize),
    #[error("regularity k={k} out of range for degree p={p} (need 0 <= k <= p-1)")]
    RegularityOutOfRange { p: usize, k: usize },
    #[error("a mesh needs at least one element")]
    NoElements,
    #[error("parameter {0} lies outside [0, 1]")]
    OutsideDomain(f64),
    #[error("expected {expected} positive weights, got {got} values")]
    InvalidWeights { expected: usize, got: usize },
    #[error("geometry map is singular (det = {0:e})")]
    SingularMap(f64),
    #[error("invalid Newmark parameters: {0}")]
    InvalidParams(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular (zero pivot in column {column})")]
    SingularMatrix { column: usize },
    #[error("system matrix is singular for configuration {0}")]
    SingularSystem(Configuration),
    #[error("solution diverged at step {step}: max-norm {norm:e} exceeds the instability threshold")]
    Unstable { step: usize, norm: f64 },
    #[error("dense eigensolve limited to {cap} unknowns, got {dof}")]
    TooLarge { dof: usize, cap: usize },
    #[error("a scaling fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("scaling fit requires positive finite data")]
    NonPositiveData,
}
