//! The `aee` command-line tool: job configuration, level tables and the
//! `coeffs`, `solve` and `validate` subcommands.
//!
//! Exit codes: 0 success, 2 configuration or engine error, 3 a level did not
//! converge, 4 a validation check failed.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Cli};
pub use config::JobConfig;
pub use error::{CliError, Status, ERROR_EXIT};
