//! Direct quadrature around the branch-point pair.
//!
//! The loop is the ellipse `y(t) = c + a cos t + i b sin t`, counterclockwise,
//! with `c = cos φ`, `a = |c|/2` and `b = sin φ + margin`, where `e^{±iφ}` is
//! the pair from [`aee_core::potential::branch_points`]. It encloses the pair
//! and excludes the origin and every other root of unity. Multivalued factors
//! are tracked continuously along the loop, starting from the right real-axis
//! crossing `c + a`, where `√(1 − y^M)` is taken positive and `√y` principal.
//! The integrands are periodic and analytic on the loop, so the trapezoid rule
//! converges geometrically.

use std::f64::consts::PI;

use aee_core::potential::branch_angle;
use aee_core::riccati::{a_sequence, default_depth};
use aee_core::{Complex64, Potential};
use rayon::prelude::*;

use crate::error::{OracleError, Result};

/// Closest allowed approach of the loop to a branch point or the origin.
pub const MIN_CLEARANCE: f64 = 1e-3;
/// Default excess of the imaginary semi-axis over `sin φ`.
pub const DEFAULT_MARGIN: f64 = 0.15;

const START_POINTS: usize = 64;
const MAX_POINTS: usize = 1 << 20;
/// Finest walk used for branch tracking, independent of the sample count.
const TRACK_RESOLUTION: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopGeometry {
    pub center: f64,
    pub semi_real: f64,
    pub semi_imag: f64,
}

impl LoopGeometry {
    pub fn standard(n_deg: usize, margin: f64) -> Self {
        let phi = branch_angle(n_deg);
        let c = phi.cos();
        LoopGeometry { center: c, semi_real: 0.5 * c.abs(), semi_imag: phi.sin() + margin }
    }

    /// `y(t)` and `dy/dt`.
    pub fn point(&self, t: f64) -> (Complex64, Complex64) {
        let (s, c) = t.sin_cos();
        (
            Complex64::new(self.center + self.semi_real * c, self.semi_imag * s),
            Complex64::new(-self.semi_real * s, self.semi_imag * c),
        )
    }

    fn inside(&self, z: Complex64) -> bool {
        let u = (z.re - self.center) / self.semi_real;
        let v = z.im / self.semi_imag;
        u * u + v * v < 1.0
    }

    /// Checks that the loop encloses exactly the branch-point pair, leaves out
    /// the origin, and keeps at least [`MIN_CLEARANCE`] from all of them.
    pub fn validate(&self, n_deg: usize) -> Result<()> {
        if !(self.semi_real > 0.0 && self.semi_imag > 0.0) {
            return Err(OracleError::InvalidArgument("loop semi-axes must be positive".into()));
        }
        let m = 2 * n_deg + 1;
        let phi = branch_angle(n_deg);
        let pair = [Complex64::from_polar(1.0, phi), Complex64::from_polar(1.0, -phi)];
        let mut special: Vec<Complex64> =
            (0..m).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)).collect();
        special.push(Complex64::new(0.0, 0.0));

        let samples = 8192;
        let mut clearance = f64::INFINITY;
        for k in 0..samples {
            let (y, _) = self.point(2.0 * PI * k as f64 / samples as f64);
            for &z in &special {
                clearance = clearance.min((y - z).norm());
            }
        }
        if clearance < MIN_CLEARANCE {
            return Err(OracleError::Geometry { distance: clearance, minimum: MIN_CLEARANCE });
        }
        for &z in &special {
            let in_pair = pair.iter().any(|w| (w - z).norm() < 1e-12);
            if self.inside(z) != in_pair {
                return Err(OracleError::InvalidArgument(format!(
                    "loop {} the point {z}",
                    if in_pair { "misses" } else { "encloses" }
                )));
            }
        }
        Ok(())
    }
}

/// `(y, dy/dt, √(1−y^M), √y)` at `npts` equally spaced parameters, with both
/// roots continued along the loop from `t = 0`.
fn tracked_samples(g: &LoopGeometry, n_deg: usize, npts: usize) -> Vec<(Complex64, Complex64, Complex64, Complex64)> {
    let m = (2 * n_deg + 1) as i32;
    let sub = TRACK_RESOLUTION.div_ceil(npts).max(1);
    let dt = 2.0 * PI / (npts * sub) as f64;
    let (y0, _) = g.point(0.0);
    let mut r = (1.0 - y0.powi(m)).sqrt();
    if r.re < 0.0 {
        r = -r;
    }
    let mut s = y0.sqrt();
    let mut out = Vec::with_capacity(npts);
    for k in 0..npts {
        let (y, dy) = g.point(k as f64 * sub as f64 * dt);
        out.push((y, dy, r, s));
        for i in 1..=sub {
            let (yy, _) = g.point((k * sub + i) as f64 * dt);
            r = nearest_root((1.0 - yy.powi(m)).sqrt(), r);
            s = nearest_root(yy.sqrt(), s);
        }
    }
    out
}

fn nearest_root(candidate: Complex64, previous: Complex64) -> Complex64 {
    if (candidate - previous).norm() > (candidate + previous).norm() {
        -candidate
    } else {
        candidate
    }
}

/// `∮ y^p (1 − y^M)^{−j/2} dy` with `p = M(j+1)/2 − n`, on the standard loop.
pub fn contour_integral_numeric(n_deg: usize, n: usize, j: usize, margin: f64) -> Result<Complex64> {
    contour_integral_on(&LoopGeometry::standard(n_deg, margin), n_deg, n, j)
}

/// As [`contour_integral_numeric`] on an arbitrary admissible loop. Point counts
/// double until successive trapezoid sums differ by less than `1e−10` relative
/// to `∮|integrand||dy|`.
pub fn contour_integral_on(g: &LoopGeometry, n_deg: usize, n: usize, j: usize) -> Result<Complex64> {
    if n_deg == 0 {
        return Err(OracleError::InvalidArgument("N must be at least 1".into()));
    }
    g.validate(n_deg)?;
    let m = (2 * n_deg + 1) as i64;
    let twice_p = m * (j as i64 + 1) - 2 * n as i64;
    let integrand = |(_, dy, r, s): (Complex64, Complex64, Complex64, Complex64)| -> Complex64 {
        s.powi(twice_p as i32) * r.powi(-(j as i32)) * dy
    };

    let mut npts = START_POINTS;
    let mut prev: Option<Complex64> = None;
    loop {
        let samples = tracked_samples(g, n_deg, npts);
        let h = 2.0 * PI / npts as f64;
        let (mut sum, mut mag) = (Complex64::new(0.0, 0.0), 0.0);
        for smp in samples {
            let v = integrand(smp);
            sum += v;
            mag += v.norm();
        }
        let (sum, mag) = (sum * h, mag * h);
        if let Some(p) = prev {
            if (sum - p).norm() <= 1e-10 * sum.norm().max(mag) {
                return Ok(sum);
            }
        }
        if npts >= MAX_POINTS {
            return Err(OracleError::NoConvergence { best: sum, iterations: npts });
        }
        prev = Some(sum);
        npts *= 2;
    }
}

/// `b_m = (1/2πi) ∮ a_m dy` for `m = 0..=m_max` by the trapezoid rule on
/// `npts` points of the standard loop, with `a₀ = √(1 − y^M)` as tracked.
///
/// With this branch `d_n = b_{2n}`, `b_{2N+3} = −ℏ/2`, and the other odd `b_m` vanish.
pub fn b_coefficients_numeric(p: &Potential, m_max: usize, npts: usize) -> Result<Vec<Complex64>> {
    if npts < 8 {
        return Err(OracleError::InvalidArgument(format!("{npts} quadrature points is too few")));
    }
    let g = LoopGeometry::standard(p.n(), DEFAULT_MARGIN);
    g.validate(p.n())?;
    let depth = default_depth(p.n(), m_max);
    let samples = tracked_samples(&g, p.n(), npts);
    let h = 2.0 * PI / npts as f64;
    let partial: Vec<Vec<Complex64>> = samples
        .par_iter()
        .map(|&(y, dy, r, _)| a_sequence(p, y, r, m_max, depth).iter().map(|jet| jet.value() * dy).collect())
        .collect();
    let scale = h / Complex64::new(0.0, 2.0 * PI);
    Ok((0..=m_max).map(|k| partial.iter().map(|v| v[k]).sum::<Complex64>() * scale).collect())
}

/// `d₀ … d_{n_max}` from [`b_coefficients_numeric`].
pub fn d_coefficients_numeric(p: &Potential, n_max: usize, npts: usize) -> Result<Vec<Complex64>> {
    let b = b_coefficients_numeric(p, 2 * n_max, npts)?;
    Ok(b.into_iter().step_by(2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use aee_core::integrals::contour_integral_closed;

    #[test]
    fn standard_loops_are_admissible() {
        for n in 1..=10usize {
            LoopGeometry::standard(n, DEFAULT_MARGIN).validate(n).unwrap();
        }
    }

    #[test]
    fn bad_loops_are_rejected() {
        let g = LoopGeometry::standard(2, 0.0);
        assert!(matches!(g.validate(2), Err(OracleError::Geometry { .. })));
        let wide = LoopGeometry { center: 0.3, semi_real: 0.9, semi_imag: 1.2 };
        assert!(matches!(wide.validate(2), Err(OracleError::InvalidArgument(_))));
    }

    #[test]
    fn leading_integral_matches_closed_form() {
        let num = contour_integral_numeric(2, 0, 1, DEFAULT_MARGIN).unwrap();
        let closed = contour_integral_closed(2, 0, 1).unwrap();
        assert!((num - closed).norm() < 1e-10 * closed.norm());
    }

    #[test]
    fn analytic_integrand_vanishes() {
        // j = 0 with integer p: nothing to enclose.
        let v = contour_integral_numeric(1, 2, 0, DEFAULT_MARGIN).unwrap();
        assert!(v.norm() < 1e-12);
    }
}
