//! Closed forms of the branch-point loop integrals
//!
//! ```text
//! I(N, n, j) = ∮ y^p (1 − y^M)^{−j/2} dy,   M = 2N+1,  p = M(j+1)/2 − n
//! ```
//!
//! Conventions, fixed against direct quadrature:
//! - the loop runs counterclockwise around the pair `e^{±iφ}`,
//!   `φ = 2π⌊(N+1)/2⌋/M`, and encloses neither the origin nor any other root of unity;
//! - the radical is the positive root where the loop crosses the real axis on its
//!   right, continued along the loop.
//!
//! For odd `j` and `q = p + 1`:
//! - `q ≢ 0 (mod M)`: `I = 4i sin(qφ) Γ(1−j/2) Γ(3/2 + j/2 − (n−1)/M) / (q Γ(3/2 − (n−1)/M))`;
//! - `q ≡ 0 (mod M)`, `q > 0`: `I = 0`;
//! - `q = −rM`, `r ≥ 0`: the ratio above is `0·∞`; its limit is
//!   `I = 2i Δ (−1)^r Γ(1−j/2) / (r! Γ(1 − r − j/2))` with `Δ = (−1)^N 2πN/M`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{AeeError, Result};
use crate::gamma::{factorial, gamma, sin_pi};

/// Human-readable statement of the convention, for reports.
pub const PHASE_CONVENTION: &str = "I(N,n,j) = ∮ y^p (1-y^M)^(-j/2) dy counterclockwise around e^{±iφ}, \
φ = 2π⌊(N+1)/2⌋/M, radical positive at the loop's right real-axis crossing; \
odd j, q = p+1: I = 4i·sin(qφ)·Γ(1-j/2)·Γ(3/2+j/2-(n-1)/M) / (q·Γ(3/2-(n-1)/M)); \
q ≡ 0 mod M: I = 0 for q > 0, I = 2iΔ(-1)^r Γ(1-j/2)/(r!·Γ(1-r-j/2)) for q = -rM, Δ = (-1)^N·2πN/M; \
d_n = -(1/2πi) Σ_j A_{2(n-j-1),2j+1} I(N,n,2j+1)";

/// `p = M(j+1)/2 − n` doubled, to stay in integers when `j` is even.
fn twice_p(n_deg: usize, n: usize, j: usize) -> i64 {
    let m = (2 * n_deg + 1) as i64;
    m * (j as i64 + 1) - 2 * n as i64
}

/// True when the resolved closed form is identically zero: `j` odd and
/// `p + 1` a positive multiple of `2N+1`, or `j = 0` (analytic integrand).
pub fn integral_vanishes(n_deg: usize, n: usize, j: usize) -> bool {
    if j == 0 {
        return true;
    }
    if j % 2 == 0 {
        return false;
    }
    let m = (2 * n_deg + 1) as i64;
    let q = twice_p(n_deg, n, j) / 2 + 1;
    q > 0 && q % m == 0
}

/// `I(N, n, j)` for odd `j`.
pub fn contour_integral_closed(n_deg: usize, n: usize, j: usize) -> Result<Complex64> {
    if j % 2 == 0 {
        return Err(AeeError::EvenRadicalPower { n_deg, n, j });
    }
    let m = (2 * n_deg + 1) as i64;
    let mf = m as f64;
    let q = twice_p(n_deg, n, j) / 2 + 1;
    let half_j = j as f64 / 2.0;
    let i = Complex64::new(0.0, 1.0);

    if q % m == 0 {
        if q > 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let r = (-q / m) as usize;
        let sign_n = if n_deg % 2 == 0 { 1.0 } else { -1.0 };
        let delta = sign_n * 2.0 * PI * n_deg as f64 / mf;
        let sign_r = if r % 2 == 0 { 1.0 } else { -1.0 };
        let v = 2.0 * delta * sign_r * gamma(1.0 - half_j) / (factorial(r) * gamma(1.0 - r as f64 - half_j));
        return Ok(i * v);
    }

    let shift = (n as f64 - 1.0) / mf;
    let s = sin_q_phi(n_deg, q);
    let v = 4.0 * s * gamma(1.0 - half_j) * gamma(1.5 + half_j - shift) / (q as f64 * gamma(1.5 - shift));
    Ok(i * v)
}

/// `sin(qφ)` with the angle reduced exactly: `qφ/π = 2q⌊(N+1)/2⌋/M`.
fn sin_q_phi(n_deg: usize, q: i64) -> f64 {
    let m = (2 * n_deg + 1) as i64;
    let k = n_deg.div_ceil(2) as i64;
    let num = (2 * q * k).rem_euclid(2 * m);
    sin_pi(num as f64 / m as f64)
}

/// Leading coefficient `d₀ = 2cos(π/(4N+2)) Γ(1/M) / (√π (2N+3) Γ(½ + 1/M))`.
pub fn leading_coefficient(n_deg: usize) -> f64 {
    let m = (2 * n_deg + 1) as f64;
    2.0 * (PI / (4 * n_deg + 2) as f64).cos() * gamma(1.0 / m)
        / (PI.sqrt() * (2 * n_deg + 3) as f64 * gamma(0.5 + 1.0 / m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::branch_angle;

    #[test]
    fn magnitude_matches_cosine_form() {
        // |sin(qφ)| coincides with |cos((2Nn+1)π/(4N+2))| whenever q ≢ 0 mod M.
        for n_deg in 1..=4usize {
            let m = (2 * n_deg + 1) as i64;
            for n in 0..20usize {
                for j in (1..8).step_by(2) {
                    let q = twice_p(n_deg, n, j) / 2 + 1;
                    if q % m == 0 {
                        continue;
                    }
                    let s = sin_q_phi(n_deg, q).abs();
                    assert!((s - (q as f64 * branch_angle(n_deg)).sin().abs()).abs() < 1e-12);
                    let c = (((2 * n_deg * n + 1) as f64) * PI / (4 * n_deg + 2) as f64).cos().abs();
                    assert!((s - c).abs() < 1e-12, "N={n_deg} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn vanishing_rule() {
        // N = 1, j = 1: p = 3 − n, q = 4 − n; q = 3 at n = 1.
        assert!(integral_vanishes(1, 1, 1));
        assert!(!integral_vanishes(1, 2, 1));
        assert!(integral_vanishes(2, 0, 0));
        assert!(!integral_vanishes(2, 0, 2));
        assert_eq!(contour_integral_closed(1, 1, 1).unwrap(), Complex64::new(0.0, 0.0));
        assert!(contour_integral_closed(1, 1, 2).is_err());
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn leading_coefficient_for_quintic() {
        // 2cos(π/10)Γ(1/5)/(7√π Γ(7/10))
        let want = 2.0 * (PI / 10.0).cos() * 4.5908437119988030532 / (7.0 * PI.sqrt() * 1.2980553326475577857);
        assert!((leading_coefficient(2) - want).abs() < 1e-15);
        assert!((leading_coefficient(2) - 0.542203912786865).abs() < 1e-14);
    }

    #[test]
    fn degenerate_limit_is_finite() {
        // N = 3, n = 15, j = 1: q = 8 − 15 = −7 = −1·M
        let v = contour_integral_closed(3, 15, 1).unwrap();
        assert!(v.norm().is_finite() && v.norm() > 0.0);
        assert_eq!(v.re, 0.0);
    }
}
