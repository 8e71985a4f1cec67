//! The suite run by `aee validate`.

use aee_core::integrals::PHASE_CONVENTION;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{self, Check};
use crate::tables::{all_tables, published_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// Coefficient-level checks and a short oracle triangle.
    Quick,
    /// Adds N = 4, the four published tables and the full oracle triangle.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub depth: Depth,
    pub n_degs: Vec<usize>,
    /// Replaces the `A_{2N,2}` seed on the general path of the two-path check.
    pub corrupt_seed: bool,
    pub seed: u64,
}

impl SuiteOptions {
    pub fn new(depth: Depth) -> Self {
        let n_degs = match depth {
            Depth::Quick => vec![1, 2, 3],
            Depth::Full => vec![1, 2, 3, 4],
        };
        SuiteOptions { depth, n_degs, corrupt_seed: false, seed: 20_240_601 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub depth: Depth,
    pub phase_convention: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;

/// Runs every check for `opts` in parallel. Check order in the report is fixed.
pub fn run_suite(opts: &SuiteOptions) -> Report {
    let n = opts.n_degs.clone();
    // Quadrature is kept to N ≤ 3: higher N needs finer loops than the defaults.
    let low: Vec<usize> = n.iter().copied().filter(|&k| k <= 3).collect();
    let table1 = published_table(1).expect("table 1").potential;
    let full = opts.depth == Depth::Full;
    let (corrupt, seed) = (opts.corrupt_seed, opts.seed);

    let mut jobs: Vec<Job> = Vec::new();
    {
        let n = n.clone();
        jobs.push(Box::new(move || vec![checks::two_path_equality(&n, corrupt)]));
    }
    {
        let low = low.clone();
        let (n_top, j_top) = if full { (8, 5) } else { (6, 3) };
        jobs.push(Box::new(move || checks::contour_vs_gamma(&low, n_top, j_top)));
    }
    {
        let n = n.clone();
        jobs.push(Box::new(move || vec![checks::taylor_vs_closed_form(&n, 20, seed)]));
    }
    {
        let n = n.clone();
        jobs.push(Box::new(move || vec![checks::hand_listed_coefficients(&n)]));
    }
    {
        let n = n.clone();
        jobs.push(Box::new(move || vec![checks::table_parity(&n)]));
    }
    {
        let low = low.clone();
        jobs.push(Box::new(move || vec![checks::odd_b_vanish(&low)]));
    }
    {
        let low = low.clone();
        jobs.push(Box::new(move || vec![checks::quadrature_vs_series(&low)]));
    }
    {
        let n = n.clone();
        jobs.push(Box::new(move || vec![checks::pt_reality(&n)]));
    }
    jobs.push(Box::new(|| vec![checks::pt_oracle_conjugation(8)]));
    {
        let p = table1.clone();
        jobs.push(Box::new(move || vec![checks::newton_derivative(&p)]));
    }
    {
        let p = table1.clone();
        let levels = if full { 10 } else { 5 };
        jobs.push(Box::new(move || vec![checks::oracle_triangle(&p, levels)]));
    }
    if full {
        for t in all_tables() {
            let aee_tol = if t.number <= 2 { 1e-5 } else { 1e-4 };
            let t2 = t.clone();
            jobs.push(Box::new(move || vec![checks::table_aee(&t, aee_tol)]));
            let first = if t2.number <= 2 { 0 } else { 2 };
            jobs.push(Box::new(move || vec![checks::table_exact(&t2, first, 1e-3)]));
        }
    }

    let checks: Vec<Check> = jobs.par_iter().flat_map_iter(|job| job()).collect();
    let passed = checks.iter().all(|c| c.passed);
    Report { depth: opts.depth, phase_convention: PHASE_CONVENTION, passed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let r = run_suite(&SuiteOptions::new(Depth::Quick));
        for c in &r.checks {
            println!("{:<26} dev {:.3e} tol {:.0e} {}", c.name, c.deviation, c.tolerance, c.detail);
        }
        assert!(r.passed, "{:?}", r.failed().collect::<Vec<_>>());
        assert!(r.phase_convention.contains("sin(qφ)"));
    }

    #[test]
    fn corrupted_seed_fails_two_path_equality_only() {
        let opts = SuiteOptions { corrupt_seed: true, ..SuiteOptions::new(Depth::Quick) };
        let r = run_suite(&opts);
        let failed: Vec<&str> = r.failed().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["two_path_equality"]);
    }

    #[test]
    fn report_order_is_stable() {
        let a: Vec<String> = run_suite(&SuiteOptions::new(Depth::Quick)).checks.into_iter().map(|c| c.name).collect();
        assert_eq!(a[0], "two_path_equality");
        assert_eq!(a[1], "contour_vs_gamma");
        assert_eq!(a.last().unwrap(), "oracle_triangle");
    }
}
