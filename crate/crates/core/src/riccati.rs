//! Order-by-order Riccati coefficients `a_n(y)` in the scaled variable `y = iε²x`.
//!
//! With `M = 2N+1`, `a₀ = √(1 − y^M)` and for `n ≥ 1`
//!
//! ```text
//! 2a₀ a_n = −[ Σ_{i=1}^{n−1} a_i a_{n−i} + ℏ a'_{n−2N−3} + β_k (y/i)^{M−k} δ_{2k,n} ]
//! ```
//!
//! [`a_n_taylor`] runs this recurrence in truncated power series arithmetic,
//! which supplies the derivatives exactly. [`a_m_closed_form`] evaluates the
//! table-based closed form; the two must agree.

use num_complex::Complex64;

use crate::error::{AeeError, Result};
use crate::jet::Jet;
use crate::potential::Potential;
use crate::table::{i_pow, CoefficientTable};

/// Distance from a branch point below which `a_n` is not evaluated.
pub const BRANCH_POINT_GUARD: f64 = 1e-8;

/// Smallest jet length accepted by [`a_n_taylor`] for index `n`.
pub fn min_depth(n_deg: usize, n: usize) -> usize {
    n.div_ceil(2 * n_deg + 3) + 2
}

/// Jet length used when none is given: two orders above [`min_depth`].
pub fn default_depth(n_deg: usize, n: usize) -> usize {
    n.div_ceil(2 * n_deg + 3) + 4
}

/// `√(1 − y^M)` on the branch continued from `+1` at `y = 0` along the straight segment.
pub fn radical_from_origin(n_deg: usize, y: Complex64) -> Complex64 {
    let m = 2 * n_deg as i32 + 1;
    let f = |z: Complex64| (1.0 - z.powi(m)).sqrt();
    if y.norm() < 1.0 {
        // 1 − y^M has positive real part inside the unit disk, so the principal root is continuous.
        return f(y);
    }
    let steps = 512;
    let mut prev = Complex64::new(1.0, 0.0);
    for k in 1..=steps {
        let mut r = f(y * (k as f64 / steps as f64));
        if (r - prev).norm() > (r + prev).norm() {
            r = -r;
        }
        prev = r;
    }
    prev
}

/// Jets of `a₀ … a_{n_max}` centered at `y0`, with `a₀(y0) = a0_value`.
///
/// `a0_value` must be a square root of `1 − y0^M`; it selects the branch.
pub fn a_sequence(p: &Potential, y0: Complex64, a0_value: Complex64, n_max: usize, depth: usize) -> Vec<Jet> {
    let n = p.n();
    let m = p.degree();
    let hbar = p.hbar();
    let y = Jet::variable(y0, depth);
    let one = Jet::constant(Complex64::new(1.0, 0.0), depth);
    let a0 = (&one - &y.powu(m as u32)).sqrt_with(a0_value);
    let inv_two_a0 = a0.scale(Complex64::new(2.0, 0.0)).recip();

    let mut a: Vec<Jet> = Vec::with_capacity(n_max + 1);
    a.push(a0);
    for idx in 1..=n_max {
        let mut s = Jet::zero(depth);
        for i in 1..=(idx - 1) / 2 {
            let prod = &a[i] * &a[idx - i];
            s = &s + &prod.scale(Complex64::new(2.0, 0.0));
        }
        if idx % 2 == 0 && idx >= 2 {
            let mid = idx / 2;
            s = &s + &(&a[mid] * &a[mid]);
        }
        if idx >= 2 * n + 3 {
            s = &s + &a[idx - 2 * n - 3].derivative().scale(Complex64::new(hbar, 0.0));
        }
        if idx % 2 == 0 && (1..=2 * n).contains(&(idx / 2)) {
            let k = idx / 2;
            let power = (m - k) as u32;
            let coeff = p.beta(k) * i_pow(-(power as i64));
            s = &s + &y.powu(power).scale(coeff);
        }
        a.push(-&(&inv_two_a0 * &s));
    }
    a
}

/// `a_{n_target}(y0)` by the recurrence, on the branch continued from `a₀(0) = 1`.
pub fn a_n_taylor(p: &Potential, y0: Complex64, n_target: usize, depth: Option<usize>) -> Result<Complex64> {
    let m = p.degree() as i32;
    if (1.0 - y0.powi(m)).norm() <= BRANCH_POINT_GUARD {
        return Err(AeeError::Singularity { y: y0 });
    }
    let needed = min_depth(p.n(), n_target);
    let depth = depth.unwrap_or_else(|| default_depth(p.n(), n_target));
    if depth < needed {
        return Err(AeeError::InsufficientDepth { n_target, needed, depth });
    }
    let a0 = radical_from_origin(p.n(), y0);
    let seq = a_sequence(p, y0, a0, n_target, depth);
    Ok(seq[n_target].value())
}

/// Closed-form `a_m(y)` on the branch continued from `a₀(0) = 1`.
pub fn a_m_closed_form(table: &CoefficientTable, y: Complex64, m: usize) -> Result<Complex64> {
    let a0 = radical_from_origin(table.n_deg(), y);
    a_m_closed_form_with(table, y, a0, m)
}

/// Closed-form `a_m(y)` with an explicit value of `a₀(y)`.
///
/// `a_m = −Σ_l A_{m−1−l,l} y^{(M(l+1)−m)/2} a₀^{−l}`. Only even first indices
/// are populated, for which the power of `y` is an integer.
pub fn a_m_closed_form_with(table: &CoefficientTable, y: Complex64, a0: Complex64, m: usize) -> Result<Complex64> {
    if m == 0 {
        return Ok(a0);
    }
    if m > table.max_index() {
        return Err(AeeError::TableRange { index: m, max_index: table.max_index() });
    }
    let big_m = (2 * table.n_deg() + 1) as i64;
    let inv_a0 = a0.inv();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut inv_pow = Complex64::new(1.0, 0.0);
    for l in 1..m {
        inv_pow *= inv_a0;
        let a = table.get((m - 1 - l) as isize, l as isize);
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let twice_e = big_m * (l as i64 + 1) - m as i64;
        let y_pow = if twice_e % 2 == 0 { y.powi((twice_e / 2) as i32) } else { y.powf(twice_e as f64 / 2.0) };
        sum += a * y_pow * inv_pow;
    }
    Ok(-sum)
}
