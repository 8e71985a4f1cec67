//! Argument definitions and the three subcommands.

use std::path::PathBuf;

use aee_core::solver::{initial_guess, solve_range, SolverOptions};
use aee_core::Complex64;
use aee_oracle::diag::{diag_spectrum, DiagOptions};
use aee_oracle::shooting::{shoot_spectrum, ShootOptions};
use aee_oracle::OracleKind;
use aee_validation::{run_suite, Depth, SuiteOptions};
use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::config::{JobConfig, OracleChoice, SeriesForm};
use crate::error::{Result, Status};
use crate::output::{coefficient_table, sig7, write_atomic, LevelRow, OracleColumn, Published, SolveReport};

#[derive(Debug, Parser)]
#[command(name = "aee", version, about = "Asymptotic energy expansions for odd-degree complex polynomial potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the series coefficients and optionally write them as JSON.
    Coeffs(CoeffsArgs),
    /// Solve the quantization condition for a range of levels.
    Solve(SolveArgs),
    /// Run the cross-check suite.
    Validate(ValidateArgs),
}

/// A configuration file or one of the four table presets.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("job").required(true).args(["config", "table1", "table2", "table3", "table4"])))]
pub struct JobSource {
    /// Job configuration (JSON).
    #[arg(short, long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// V = (ix)^5 + ix, levels 0-11.
    #[arg(long)]
    pub table1: bool,
    /// V = (ix)^5 + (1+i)x, levels 0-11.
    #[arg(long)]
    pub table2: bool,
    /// V = (ix)^7 + x^6 + ix^5 + x^2, levels 0-11.
    #[arg(long)]
    pub table3: bool,
    /// V = (ix)^9 + x^2 + ix, levels 0-10.
    #[arg(long)]
    pub table4: bool,
    /// Use the four-term closed form (two-term potentials only).
    #[arg(long)]
    pub two_term: bool,
}

impl JobSource {
    fn preset(&self) -> Option<u8> {
        [self.table1, self.table2, self.table3, self.table4].iter().position(|&b| b).map(|i| i as u8 + 1)
    }

    /// The configuration, and the published columns when a preset was chosen.
    pub fn resolve(&self) -> Result<(JobConfig, Option<Published>)> {
        let (mut cfg, published) = match (self.preset(), &self.config) {
            (Some(k), _) => {
                let (cfg, t) = JobConfig::preset(k)?;
                (cfg, Some(Published { table: k, aee: t.aee, exact: t.exact }))
            }
            (None, Some(path)) => (JobConfig::load(path)?, None),
            (None, None) => unreachable!("clap requires one job source"),
        };
        if self.two_term {
            cfg.series = SeriesForm::TwoTerm;
        }
        cfg.validate()?;
        Ok((cfg, published))
    }
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub job: JobSource,
    /// Write the series as JSON records.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub job: JobSource,
    /// Oracle columns to add; overrides the configuration.
    #[arg(long, value_enum)]
    pub oracle: Option<OracleChoice>,
    /// Output path for the CSV; JSON goes next to it with a .json extension.
    /// Without it, tables are printed.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also emit JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Coefficient-level checks with N in {1, 2, 3} (default).
    #[arg(long, conflicts_with = "full")]
    pub quick: bool,
    /// Adds N = 4, the published tables and the full oracle triangle.
    #[arg(long)]
    pub full: bool,
    /// Write the JSON report here.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Corrupts the A_(2N,2) seed on one path, to show the suite catches it.
    #[arg(long, hide = true)]
    pub corrupt_seed: bool,
}

pub fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Coeffs(a) => coeffs(&a),
        Command::Solve(a) => solve(&a),
        Command::Validate(a) => validate(&a),
    }
}

pub fn coeffs(args: &CoeffsArgs) -> Result<Status> {
    let (cfg, _) = args.job.resolve()?;
    let series = cfg.build_series()?;
    if let Some(path) = &args.output {
        let mut bytes = serde_json::to_vec_pretty(&series.to_records())?;
        bytes.push(b'\n');
        write_atomic(path, &bytes)?;
    }
    print!("{}", coefficient_table(&series));
    Ok(Status::Success)
}

/// Computes the level table for `cfg`; no output is written.
pub fn solve_job(cfg: &JobConfig, published: Option<Published>) -> Result<SolveReport> {
    let series = cfg.build_series()?;
    let opts = SolverOptions { tol: cfg.tol, truncation: cfg.truncation_for(&series), ..Default::default() };
    let range = cfg.levels.range();
    let levels: Vec<LevelRow> = solve_range(&series, range.clone(), &opts)
        .into_iter()
        .zip(range.clone())
        .map(|(r, n)| match r {
            Ok(l) => LevelRow { n, level: Some(l), error: None },
            Err(e) => LevelRow { n, level: None, error: Some(e.to_string()) },
        })
        .collect();

    let mut oracles = Vec::new();
    if !range.is_empty() {
        for kind in cfg.oracle.kinds() {
            let result = match kind {
                OracleKind::Diagonalization => {
                    let mut r = diag_spectrum(&cfg.potential, range.end, &DiagOptions::default())?;
                    r.values.drain(..range.start);
                    r.errors.drain(..range.start);
                    r.converged.drain(..range.start);
                    r
                }
                _ => {
                    let guesses: Vec<Complex64> = levels
                        .iter()
                        .map(|row| {
                            row.level.as_ref().map(|l| l.energy).unwrap_or_else(|| initial_guess(&series, row.n))
                        })
                        .collect();
                    shoot_spectrum(&cfg.potential, &guesses, &ShootOptions::default())?
                }
            };
            oracles.push(OracleColumn { result, first_level: range.start });
        }
    }
    Ok(SolveReport { config: cfg.clone(), levels, oracles, published })
}

pub fn solve(args: &SolveArgs) -> Result<Status> {
    let (mut cfg, published) = args.job.resolve()?;
    if let Some(o) = args.oracle {
        cfg.oracle = o;
    }
    if args.json {
        cfg.outputs.json = true;
    }
    let report = solve_job(&cfg, published)?;

    // Everything is serialized before the first file is touched.
    let csv = if cfg.outputs.csv { Some(report.to_csv()?) } else { None };
    let json = if cfg.outputs.json { Some(report.to_json()?) } else { None };
    match &args.output {
        Some(path) => {
            if let Some(bytes) = &csv {
                write_atomic(path, bytes)?;
            }
            if let Some(bytes) = &json {
                let target = if cfg.outputs.csv { path.with_extension("json") } else { path.clone() };
                write_atomic(&target, bytes)?;
            }
        }
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            let io = |source| crate::error::CliError::Io { path: "<stdout>".into(), source };
            for bytes in csv.iter().chain(json.iter()) {
                out.write_all(bytes).map_err(io)?;
            }
        }
    }

    for e in report.levels.iter().filter_map(|row| row.error.as_ref()) {
        eprintln!("{e}");
    }
    let all_converged = report.levels.iter().all(|r| r.level.as_ref().is_some_and(|l| l.converged));
    Ok(if all_converged { Status::Success } else { Status::NotConverged })
}

pub fn validate(args: &ValidateArgs) -> Result<Status> {
    let depth = if args.full { Depth::Full } else { Depth::Quick };
    let opts = SuiteOptions { corrupt_seed: args.corrupt_seed, ..SuiteOptions::new(depth) };
    let report = run_suite(&opts);
    let mut bytes = serde_json::to_vec_pretty(&report)?;
    bytes.push(b'\n');
    if let Some(path) = &args.output {
        write_atomic(path, &bytes)?;
    }
    if args.json {
        print!("{}", String::from_utf8_lossy(&bytes));
    } else {
        println!("phase convention: {}", report.phase_convention);
        for c in &report.checks {
            println!(
                "{} {:<28} deviation {:>13}  tolerance {:>9}  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                sig7(c.deviation),
                sig7(c.tolerance),
                c.detail
            );
        }
        let failed = report.failed().count();
        println!("{} of {} checks passed", report.checks.len() - failed, report.checks.len());
    }
    Ok(if report.passed { Status::Success } else { Status::ValidationFailed })
}
