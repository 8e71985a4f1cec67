use std::process::ExitCode;

use aee_cli::{run, Cli, ERROR_EXIT};
use clap::Parser;

/// Sizes the global worker pool from `AEE_THREADS`, when set.
fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("AEE_THREADS") else {
        return Ok(());
    };
    let n: usize =
        value.trim().parse().map_err(|_| format!("AEE_THREADS must be a positive integer, got {value:?}"))?;
    if n == 0 {
        return Err("AEE_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(ERROR_EXIT as u8);
    }
    match run(cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR_EXIT as u8)
        }
    }
}
