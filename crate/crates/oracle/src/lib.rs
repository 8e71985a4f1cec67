//! Independent numerical checks for the asymptotic energy expansion.
//!
//! - [`diag`]: eigenvalues of `H = p² + V` in a truncated oscillator basis.
//! - [`shooting`]: integration of `−ℏ²u″ + Vu = Eu` along complex rays in the
//!   Stokes wedges, with a Wronskian mismatch and secant refinement.
//! - [`contour`]: direct quadrature of the branch-point loop integrals and of the
//!   series coefficients themselves.
//!
//! None of these use the coefficient table or the Γ closed forms.

pub mod contour;
pub mod diag;
pub mod error;
pub mod result;
pub mod shooting;

pub use error::{OracleError, Result};
pub use result::{OracleKind, OracleResult};
