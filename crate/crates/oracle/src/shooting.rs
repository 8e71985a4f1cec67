//! Complex-ray shooting for `−ℏ²u″ + V(x)u = Eu`.
//!
//! Each solution is started deep inside a Stokes wedge with its decaying WKB
//! behaviour and integrated along a straight segment to a common match point.
//! The two solutions are proportional exactly at an eigenvalue.

use std::f64::consts::PI;

use aee_core::{Complex64, Potential};
use rayon::prelude::*;

use crate::error::{OracleError, Result};
use crate::result::{OracleKind, OracleResult};

/// Solutions are rescaled whenever `|u| + |u′|` passes this bound.
const RENORM_BOUND: f64 = 1e8;

/// Centers of the two Stokes wedges of `(ix)^{2N+1}` on either side of the
/// direction in which the wavefunction is allowed to grow. Returned as
/// `(θ_left, θ_right)`, with `θ_right = (−1)^{N+1} π/(2(2N+3))` and
/// `θ_left = (−1)^N π − θ_right`. Each wedge has opening `2π/(2N+3)`.
pub fn wedge_rays(n_deg: usize) -> (f64, f64) {
    let sign = if n_deg % 2 == 0 { 1.0 } else { -1.0 };
    let right = -sign * PI / (2.0 * (2 * n_deg + 3) as f64);
    (sign * PI - right, right)
}

/// Where the two solutions are compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatchPoint {
    Origin,
    /// Midpoint of the pair of turning points of `(ix)^M = |E|` adjacent to
    /// the right ray, `i|E|^{1/M} sin θ_t`. Keeps the match point inside the
    /// classically allowed region, where neither solution is exponentially small.
    TurningMidpoint,
    At(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootOptions {
    /// `(θ_left, θ_right)`; `None` uses [`wedge_rays`].
    pub rays: Option<(f64, f64)>,
    /// Ray length; `None` grows `R` by 5% steps until `|V| > 10³ max(|E|, 1)` on both rays.
    pub r_max: Option<f64>,
    pub steps: usize,
    pub match_point: MatchPoint,
    /// Secant stops once `|ΔE|` falls below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ShootOptions {
    fn default() -> Self {
        ShootOptions {
            rays: None,
            r_max: None,
            steps: 20_000,
            match_point: MatchPoint::TurningMidpoint,
            tol: 1e-10,
            max_iter: 60,
        }
    }
}

/// Resolved geometry for one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayGeometry {
    pub theta_left: f64,
    pub theta_right: f64,
    pub r_max: f64,
    pub x0: Complex64,
}

/// Ray length for which the potential dominates `E` by a factor `10³` on both rays.
pub fn default_r_max(p: &Potential, e: Complex64, rays: (f64, f64)) -> f64 {
    let bound = 1e3 * e.norm().max(1.0);
    let mut r = 1.0;
    while p.evaluate(Complex64::from_polar(r, rays.0)).norm() <= bound
        || p.evaluate(Complex64::from_polar(r, rays.1)).norm() <= bound
    {
        r *= 1.05;
    }
    r
}

/// The match point for energy scale `e`.
pub fn match_point(p: &Potential, e: Complex64, choice: MatchPoint, theta_right: f64) -> Complex64 {
    match choice {
        MatchPoint::Origin => Complex64::new(0.0, 0.0),
        MatchPoint::At(x) => x,
        MatchPoint::TurningMidpoint => {
            let m = p.degree() as f64;
            let step = 2.0 * PI / m;
            let k = ((theta_right + PI / 2.0) / step).round();
            let theta_t = -PI / 2.0 + step * k;
            Complex64::new(0.0, e.norm().powf(1.0 / m) * theta_t.sin())
        }
    }
}

/// Geometry used for energy `e` under `opts`.
pub fn geometry(p: &Potential, e: Complex64, opts: &ShootOptions) -> RayGeometry {
    let (theta_left, theta_right) = opts.rays.unwrap_or_else(|| wedge_rays(p.n()));
    let r_max = opts.r_max.unwrap_or_else(|| default_r_max(p, e, (theta_left, theta_right)));
    let x0 = match_point(p, e, opts.match_point, theta_right);
    RayGeometry { theta_left, theta_right, r_max, x0 }
}

/// Scale-free Wronskian mismatch `(u_L u_R′ − u_L′ u_R)/(u_L u_R′ + u_L′ u_R)` at `g.x0`.
///
/// Analytic in `E` for fixed geometry; vanishes at eigenvalues.
pub fn shoot_mismatch(p: &Potential, e: Complex64, g: &RayGeometry, steps: usize) -> Result<Complex64> {
    if steps < 10 {
        return Err(OracleError::InvalidArgument(format!("{steps} integration steps is too few")));
    }
    let left = Complex64::from_polar(g.r_max, g.theta_left);
    let right = Complex64::from_polar(g.r_max, g.theta_right);
    let (ul, dl) = integrate_segment(p, e, left, g.x0, steps);
    let (ur, dr) = integrate_segment(p, e, right, g.x0, steps);
    let a = ul * dr;
    let b = dl * ur;
    Ok((a - b) / (a + b))
}

/// RK4 for `u″ = (V − E)u/ℏ²` along `x = from + t(to − from)`, `t ∈ [0, 1]`.
/// Returns `(u, du/dx)` at `to`, up to an overall factor.
fn integrate_segment(
    p: &Potential,
    e: Complex64,
    from: Complex64,
    to: Complex64,
    steps: usize,
) -> (Complex64, Complex64) {
    let d = to - from;
    let k = d * d / (p.hbar() * p.hbar());
    let q = |t: f64| k * (p.evaluate(from + d * t) - e);

    // Decaying WKB seed: u ∝ Q^{−1/4} exp(∫√Q dt), growing toward the match point.
    let q0 = q(0.0);
    let mut sq = q0.sqrt();
    if sq.re < 0.0 {
        sq = -sq;
    }
    let dq0 = k * d * p.evaluate_derivative(from);
    let mut u = Complex64::new(1.0, 0.0);
    let mut w = sq - dq0 / (4.0 * q0);

    let h = 1.0 / steps as f64;
    let mut q_prev = q0;
    for i in 0..steps {
        let t = i as f64 * h;
        let q_mid = q(t + 0.5 * h);
        let q_next = q(t + h);
        let (k1u, k1w) = (w, q_prev * u);
        let (k2u, k2w) = (w + 0.5 * h * k1w, q_mid * (u + 0.5 * h * k1u));
        let (k3u, k3w) = (w + 0.5 * h * k2w, q_mid * (u + 0.5 * h * k2u));
        let (k4u, k4w) = (w + h * k3w, q_next * (u + h * k3u));
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        q_prev = q_next;
        let size = u.norm() + w.norm();
        if size > RENORM_BOUND {
            u /= size;
            w /= size;
        }
    }
    (u, w / d)
}

/// Secant iteration on [`shoot_mismatch`] from `guess`, with the geometry fixed at the guess.
pub fn refine_energy_shooting(p: &Potential, guess: Complex64, opts: &ShootOptions) -> Result<(Complex64, usize)> {
    let g = geometry(p, guess, opts);
    let mut e0 = guess;
    let mut e1 = guess + 1e-4 * guess.norm().max(1.0);
    let mut f0 = shoot_mismatch(p, e0, &g, opts.steps)?;
    let mut f1 = shoot_mismatch(p, e1, &g, opts.steps)?;
    for it in 1..=opts.max_iter {
        let denom = f1 - f0;
        if denom == Complex64::new(0.0, 0.0) {
            if f1 == Complex64::new(0.0, 0.0) {
                return Ok((e1, it));
            }
            return Err(OracleError::NoConvergence { best: e1, iterations: it });
        }
        let e2 = e1 - f1 * (e1 - e0) / denom;
        if !(e2.re.is_finite() && e2.im.is_finite()) {
            return Err(OracleError::NoConvergence { best: e1, iterations: it });
        }
        e0 = e1;
        f0 = f1;
        e1 = e2;
        if (e1 - e0).norm() < opts.tol {
            return Ok((e1, it));
        }
        f1 = shoot_mismatch(p, e1, &g, opts.steps)?;
    }
    let best = if f1.norm() <= f0.norm() { e1 } else { e0 };
    Err(OracleError::NoConvergence { best, iterations: opts.max_iter })
}

/// Refines each guess at `steps` and `2·steps`. The finer value is reported and
/// the difference is the error estimate. Failed refinements keep their best
/// iterate and are flagged.
pub fn shoot_spectrum(p: &Potential, guesses: &[Complex64], opts: &ShootOptions) -> Result<OracleResult> {
    let fine = ShootOptions { steps: 2 * opts.steps, ..*opts };
    type Refined = Result<(Complex64, usize)>;
    let runs: Vec<(Refined, Refined)> = guesses
        .par_iter()
        .map(|&g| rayon::join(|| refine_energy_shooting(p, g, opts), || refine_energy_shooting(p, g, &fine)))
        .collect();

    let mut out = OracleResult::new(OracleKind::Shooting);
    for (coarse, finer) in runs {
        let (ec, okc) = settle(coarse)?;
        let (ef, okf) = settle(finer)?;
        out.push(ef, (ef - ec).norm(), okc && okf);
    }
    out.meta.insert("steps".into(), opts.steps as f64);
    out.meta.insert("steps_refined".into(), fine.steps as f64);
    out.meta.insert("tol".into(), opts.tol);
    out.meta.insert("error_estimate".into(), out.max_error());
    Ok(out)
}

fn settle(r: Result<(Complex64, usize)>) -> Result<(Complex64, bool)> {
    match r {
        Ok((e, _)) => Ok((e, true)),
        Err(OracleError::NoConvergence { best, .. }) => Ok((best, false)),
        Err(other) => Err(other),
    }
}
