//! Published spectra and the cross-check suite.
//!
//! - [`tables`]: the four reference Hamiltonians with their expansion and exact columns.
//! - [`checks`]: independent comparisons between the closed forms, the
//!   recurrence, loop quadrature and the spectral oracles.
//! - [`suite`]: the ordered, parallel run behind `aee validate`.

pub mod checks;
pub mod suite;
pub mod tables;

pub use checks::Check;
pub use suite::{run_suite, Depth, Report, SuiteOptions};
pub use tables::{all_tables, published_table, PublishedTable};
