//! Newton solution of the quantization condition `J(E) = nℏ`.

use std::ops::Range;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AeeError, Result};
use crate::series::EnergySeries;

/// Where the series is cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truncation {
    /// Before the smallest term at the current energy, re-chosen until it settles.
    Optimal,
    /// After index `k`. The root is tracked by continuation through the nonzero
    /// indices `≤ k`, starting from the leading term alone.
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub truncation: Truncation,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-12, max_iter: 50, truncation: Truncation::Optimal }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub n: usize,
    #[serde(with = "crate::complex_serde")]
    pub energy: Complex64,
    /// `|J(E) − nℏ|` at the returned energy.
    pub residual: f64,
    pub k_trunc: usize,
    pub iterations: usize,
    pub converged: bool,
    /// Magnitude of the first omitted nonzero term, or of the last kept one
    /// when nothing is omitted.
    pub est_series_error: f64,
}

const MAX_HALVINGS: usize = 8;
const MAX_RETRUNCATIONS: usize = 8;
const MIN_ENERGY: f64 = 1e-6;

/// `((n+½)ℏ/d₀)^{(4N+2)/(2N+3)}`, the root of the leading term alone.
pub fn initial_guess(series: &EnergySeries, n: usize) -> Complex64 {
    let n_deg = series.n_deg() as f64;
    let ratio = (n as f64 + 0.5) * series.hbar() / series.d(0);
    ratio.powf((4.0 * n_deg + 2.0) / (2.0 * n_deg + 3.0))
}

pub fn solve_level(series: &EnergySeries, n: usize, opts: &SolverOptions) -> Result<EnergyLevel> {
    solve_level_with_trace(series, n, opts).map(|(level, _)| level)
}

/// As [`solve_level`], also returning every Newton iterate in order.
pub fn solve_level_with_trace(
    series: &EnergySeries,
    n: usize,
    opts: &SolverOptions,
) -> Result<(EnergyLevel, Vec<Complex64>)> {
    let target = n as f64 * series.hbar();
    let mut trace = vec![initial_guess(series, n)];
    let mut e = trace[0];
    let mut iterations = 0;

    let (k, converged) = match opts.truncation {
        Truncation::Fixed(k) => {
            if k > series.n_max() {
                return Err(AeeError::TruncationRange { k, n_max: series.n_max() });
            }
            let stages: Vec<usize> = series.nonzero_indices().into_iter().filter(|&i| i >= 1 && i <= k).collect();
            let mut converged = true;
            for &stage in &stages {
                let out = newton(series, n, target, e, stage, opts, &mut trace)?;
                e = out.0;
                iterations += out.1;
                converged = out.2;
            }
            if stages.is_empty() {
                let out = newton(series, n, target, e, k, opts, &mut trace)?;
                e = out.0;
                iterations += out.1;
                converged = out.2;
            }
            (k, converged)
        }
        Truncation::Optimal => {
            let mut k = series.optimal_truncation(e)?;
            let mut converged = false;
            for _ in 0..MAX_RETRUNCATIONS {
                let out = newton(series, n, target, e, k, opts, &mut trace)?;
                e = out.0;
                iterations += out.1;
                converged = out.2;
                let k_new = series.optimal_truncation(e)?;
                if k_new == k {
                    break;
                }
                k = k_new;
            }
            (k, converged)
        }
    };

    let residual = (series.eval_j(e, k)? - target).norm();
    let est_series_error = series_error(series, e, k)?;
    let level = EnergyLevel { n, energy: e, residual, k_trunc: k, iterations, converged, est_series_error };
    Ok((level, trace))
}

/// Solves every level in `levels` in parallel. Results keep the order of `levels`.
pub fn solve_range(series: &EnergySeries, levels: Range<usize>, opts: &SolverOptions) -> Vec<Result<EnergyLevel>> {
    levels.into_par_iter().map(|n| solve_level(series, n, opts)).collect()
}

fn series_error(series: &EnergySeries, e: Complex64, k: usize) -> Result<f64> {
    let next = (k + 1..=series.n_max()).find(|&i| series.d(i) != Complex64::new(0.0, 0.0));
    Ok(series.term(e, next.unwrap_or(k))?.norm())
}

/// Damped Newton at fixed truncation. Returns `(E, iterations, converged)`.
fn newton(
    series: &EnergySeries,
    n: usize,
    target: f64,
    start: Complex64,
    k: usize,
    opts: &SolverOptions,
    trace: &mut Vec<Complex64>,
) -> Result<(Complex64, usize, bool)> {
    let mut e = start;
    let mut f = series.eval_j(e, k)? - target;
    for it in 1..=opts.max_iter {
        if f.norm() <= tolerance(series, e, k, target, opts.tol)? {
            return Ok((e, it - 1, true));
        }
        let df = series.eval_j_derivative(e, k)?;
        if df.norm() == 0.0 || !df.re.is_finite() {
            return Err(AeeError::Domain(format!("vanishing derivative at E = {e}")));
        }
        let step = f / df;
        let mut lambda = 1.0;
        let mut next = e - step;
        let mut f_next = eval_guarded(series, next, k, target)?;
        for _ in 0..MAX_HALVINGS {
            if f_next.norm() < f.norm() {
                break;
            }
            lambda *= 0.5;
            next = e - step * lambda;
            f_next = eval_guarded(series, next, k, target)?;
        }
        if escaped(e, next) {
            return Err(AeeError::BranchEscape { n, energy: next });
        }
        trace.push(next);
        let small_step = (next - e).norm() <= 4.0 * f64::EPSILON * next.norm();
        e = next;
        f = f_next;
        if small_step {
            let ok = f.norm() <= 1e3 * tolerance(series, e, k, target, opts.tol)?;
            return Ok((e, it, ok));
        }
    }
    let ok = f.norm() <= tolerance(series, e, k, target, opts.tol)?;
    Ok((e, opts.max_iter, ok))
}

/// `tol·(1 + nℏ)`, raised to the rounding floor of the summed terms.
fn tolerance(series: &EnergySeries, e: Complex64, k: usize, target: f64, tol: f64) -> Result<f64> {
    let mut mag = series.constant().norm();
    for i in series.nonzero_indices().into_iter().take_while(|&i| i <= k) {
        mag += series.term(e, i)?.norm();
    }
    Ok((tol * (1.0 + target)).max(16.0 * f64::EPSILON * mag))
}

fn eval_guarded(series: &EnergySeries, e: Complex64, k: usize, target: f64) -> Result<Complex64> {
    if e.norm() < MIN_ENERGY {
        // Reported as an escape by the caller; an infinite residual forces halving.
        return Ok(Complex64::new(f64::INFINITY, 0.0));
    }
    Ok(series.eval_j(e, k)? - target)
}

/// Crossing the cut of `E^α` on the negative real axis, or collapsing onto `E = 0`.
fn escaped(from: Complex64, to: Complex64) -> bool {
    if to.norm() < MIN_ENERGY || !(to.re.is_finite() && to.im.is_finite()) {
        return true;
    }
    if from.re >= 0.0 && to.re >= 0.0 {
        return false;
    }
    // Parametrize the segment and see whether it meets Re < 0, Im = 0.
    if (from.im > 0.0) == (to.im > 0.0) && from.im != 0.0 && to.im != 0.0 {
        return false;
    }
    let t = if from.im == to.im { 0.0 } else { from.im / (from.im - to.im) };
    let x = from.re + t * (to.re - from.re);
    x < 0.0
}
