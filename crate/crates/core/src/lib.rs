//! Asymptotic energy expansions (AEE) for Schrödinger operators
//! `H = p² + V(x)` with odd-degree complex polynomial potentials
//!
//! ```text
//! V(x) = (ix)^(2N+1) + β₁x^(2N) + … + β_{2N}x
//! ```
//!
//! The quantity `J(E) = −ℏ/2 + Σ dₙ E^{(2N+3−2n)/(4N+2)}` is expanded in closed
//! form and the eigenvalues are the roots of `J(E) = nℏ`.
//!
//! Layout:
//! - [`potential`]: the problem definition and PT classification.
//! - [`table`]: the `A_{s,l}` coefficient recurrence.
//! - [`integrals`]: Γ-function values of the branch-point contour integrals.
//! - [`series`]: energy-series construction and evaluation.
//! - [`riccati`]: the order-by-order Riccati recurrence in truncated power series
//!   arithmetic, and the closed form it is checked against.
//! - [`solver`]: Newton solution of the quantization condition.

pub mod complex_serde;
pub mod error;
pub mod gamma;
pub mod integrals;
pub mod jet;
pub mod potential;
pub mod riccati;
pub mod series;
pub mod solver;
pub mod table;

pub use num_complex::Complex64;

pub use error::{AeeError, Result};
pub use potential::{BranchPointPair, Potential};
pub use series::{two_term_series, EnergySeries, Exponent};
pub use solver::{EnergyLevel, SolverOptions, Truncation};
pub use table::CoefficientTable;

/// The imaginary unit.
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
