use aee_core::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("loop passes {distance:.3e} from a singular point (minimum {minimum:.0e})")]
    Geometry { distance: f64, minimum: f64 },
    #[error("no convergence after {iterations} iterations; best iterate {best}")]
    NoConvergence { best: Complex64, iterations: usize },
    #[error("eigensolver failed for a {size}×{size} matrix")]
    Eigensolver { size: usize },
}
