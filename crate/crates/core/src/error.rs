use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, AeeError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AeeError {
    #[error("expected {expected} coefficients, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation index {k} exceeds series order {n_max}")]
    TruncationRange { k: usize, n_max: usize },

    #[error("index {index} is outside the coefficient table (built to {max_index})")]
    TableRange { index: usize, max_index: usize },

    #[error("point {y} is within 1e-8 of a branch point")]
    Singularity { y: Complex64 },

    #[error("recurrence for index {n_target} needs depth {needed}, got {depth}")]
    InsufficientDepth { n_target: usize, needed: usize, depth: usize },

    #[error("contour integral with even radical power j={j} has no closed form here (N={n_deg}, n={n})")]
    EvenRadicalPower { n_deg: usize, n: usize, j: usize },

    #[error("level {n}: iterate {energy} left the principal sheet")]
    BranchEscape { n: usize, energy: Complex64 },
}
