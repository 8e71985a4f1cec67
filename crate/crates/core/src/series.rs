//! The asymptotic energy series
//!
//! ```text
//! J(E) = −ℏ/2 + Σ_{n ≥ 0} d_n E^{(2N+3−2n)/(4N+2)}
//! ```
//!
//! with `d_n = −(1/2πi) Σ_j A_{2(n−j−1),2j+1} I(N, n, 2j+1)` for `n ≥ 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AeeError, Result};
use crate::gamma::gamma;
use crate::integrals::{contour_integral_closed, integral_vanishes, leading_coefficient};
use crate::potential::Potential;
use crate::table::CoefficientTable;

/// A `d_n` whose magnitude falls below this fraction of the summed magnitudes of
/// its contributions is an algebraic zero and is stored as exactly zero.
pub const CANCELLATION_FLOOR: f64 = 1e-13;

/// Hard cap on series order when searching for a number of nonzero terms.
const MAX_ORDER: usize = 400;

/// Rational exponent `num/den` of `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

impl Exponent {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergySeries {
    n_deg: usize,
    hbar: f64,
    constant: Complex64,
    d: Vec<Complex64>,
}

/// One entry of the JSON export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesRecord {
    Term {
        n: usize,
        #[serde(with = "crate::complex_serde")]
        d: Complex64,
        exponent_num: i64,
        exponent_den: i64,
    },
    Constant {
        #[serde(with = "crate::complex_serde")]
        constant: Complex64,
    },
}

impl EnergySeries {
    /// Series with coefficients `d[0..]` and the constant `−ℏ/2`.
    pub fn new(n_deg: usize, hbar: f64, d: Vec<Complex64>) -> Result<Self> {
        if n_deg == 0 {
            return Err(AeeError::Domain("N must be at least 1".into()));
        }
        if d.is_empty() {
            return Err(AeeError::Domain("a series needs at least d₀".into()));
        }
        Ok(EnergySeries { n_deg, hbar, constant: Complex64::new(-hbar / 2.0, 0.0), d })
    }

    pub fn n_deg(&self) -> usize {
        self.n_deg
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn n_max(&self) -> usize {
        self.d.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.d
    }

    pub fn d(&self, n: usize) -> Complex64 {
        self.d[n]
    }

    /// `(2N+3−2n)/(4N+2)`.
    pub fn exponent(&self, n: usize) -> Exponent {
        exponent(self.n_deg, n)
    }

    /// Indices with `d_n ≠ 0`, ascending.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..self.d.len()).filter(|&n| self.d[n] != Complex64::new(0.0, 0.0)).collect()
    }

    /// The series cut after index `k`.
    pub fn truncated(&self, k: usize) -> Result<EnergySeries> {
        self.check_k(k)?;
        Ok(EnergySeries { d: self.d[..=k].to_vec(), ..self.clone() })
    }

    /// `d_n E^{exponent(n)}` on the principal branch.
    pub fn term(&self, e: Complex64, n: usize) -> Result<Complex64> {
        let ln_e = log_nonzero(e)?;
        Ok(self.d[n] * (ln_e * self.exponent(n).value()).exp())
    }

    /// `J(E)` summed through index `k_trunc`, ascending, with compensation.
    pub fn eval_j(&self, e: Complex64, k_trunc: usize) -> Result<Complex64> {
        self.check_k(k_trunc)?;
        let ln_e = log_nonzero(e)?;
        let mut sum = CompensatedSum::new(self.constant);
        for n in 0..=k_trunc {
            if self.d[n] != Complex64::new(0.0, 0.0) {
                sum.add(self.d[n] * (ln_e * self.exponent(n).value()).exp());
            }
        }
        Ok(sum.total())
    }

    /// `dJ/dE`, term by term.
    pub fn eval_j_derivative(&self, e: Complex64, k_trunc: usize) -> Result<Complex64> {
        self.check_k(k_trunc)?;
        let ln_e = log_nonzero(e)?;
        let mut sum = CompensatedSum::new(Complex64::new(0.0, 0.0));
        for n in 0..=k_trunc {
            if self.d[n] != Complex64::new(0.0, 0.0) {
                let alpha = self.exponent(n).value();
                sum.add(self.d[n] * alpha * (ln_e * (alpha - 1.0)).exp());
            }
        }
        Ok(sum.total())
    }

    /// Index `k ≥ 1` of the smallest nonzero term `|d_k E^{α_k}|`; `0` if there is none.
    /// Ties go to the lower index.
    pub fn optimal_truncation(&self, e: Complex64) -> Result<usize> {
        let ln_e = log_nonzero(e)?;
        let mut best: Option<(f64, usize)> = None;
        for k in 1..self.d.len() {
            if self.d[k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mag = self.d[k].norm() * (ln_e.re * self.exponent(k).value()).exp();
            if best.is_none_or(|(m, _)| mag < m) {
                best = Some((mag, k));
            }
        }
        Ok(best.map_or(0, |(_, k)| k))
    }

    /// Nonzero terms and the constant, in export order.
    pub fn to_records(&self) -> Vec<SeriesRecord> {
        let mut out: Vec<SeriesRecord> = self
            .nonzero_indices()
            .into_iter()
            .map(|n| {
                let ex = self.exponent(n);
                SeriesRecord::Term { n, d: self.d[n], exponent_num: ex.num, exponent_den: ex.den }
            })
            .collect();
        out.push(SeriesRecord::Constant { constant: self.constant });
        out
    }

    /// Inverse of [`to_records`](Self::to_records). `N` is read from the exponent
    /// denominator and `ℏ` from the constant.
    pub fn from_records(records: &[SeriesRecord]) -> Result<EnergySeries> {
        let mut constant = None;
        let mut terms = Vec::new();
        let mut n_deg = None;
        for r in records {
            match *r {
                SeriesRecord::Constant { constant: c } => constant = Some(c),
                SeriesRecord::Term { n, d, exponent_den, .. } => {
                    if exponent_den < 6 || (exponent_den - 2) % 4 != 0 {
                        return Err(AeeError::Domain(format!("bad exponent denominator {exponent_den}")));
                    }
                    n_deg = Some(((exponent_den - 2) / 4) as usize);
                    terms.push((n, d));
                }
            }
        }
        let constant = constant.ok_or_else(|| AeeError::Domain("missing constant record".into()))?;
        let n_deg = n_deg.ok_or_else(|| AeeError::Domain("no series terms".into()))?;
        let n_max = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut d = vec![Complex64::new(0.0, 0.0); n_max + 1];
        for (n, v) in terms {
            d[n] = v;
        }
        let mut s = EnergySeries::new(n_deg, -2.0 * constant.re, d)?;
        s.constant = constant;
        Ok(s)
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.n_max() {
            return Err(AeeError::TruncationRange { k, n_max: self.n_max() });
        }
        Ok(())
    }
}

pub fn exponent(n_deg: usize, n: usize) -> Exponent {
    Exponent { num: (2 * n_deg + 3) as i64 - 2 * n as i64, den: (4 * n_deg + 2) as i64 }
}

fn log_nonzero(e: Complex64) -> Result<Complex64> {
    if e == Complex64::new(0.0, 0.0) || !(e.re.is_finite() && e.im.is_finite()) {
        return Err(AeeError::Domain(format!("J(E) is undefined at E = {e}")));
    }
    Ok(e.ln())
}

/// `d₀ … d_{n_max}` for a general potential.
pub fn d_coefficients(p: &Potential, n_max: usize) -> Result<EnergySeries> {
    let table = CoefficientTable::build(p, 2 * n_max);
    d_coefficients_from_table(p, &table, n_max)
}

/// As [`d_coefficients`] with a prebuilt table, which must reach index `2·n_max`.
pub fn d_coefficients_from_table(p: &Potential, table: &CoefficientTable, n_max: usize) -> Result<EnergySeries> {
    if n_max > 0 && table.max_index() < 2 * n_max {
        return Err(AeeError::TableRange { index: 2 * n_max, max_index: table.max_index() });
    }
    let n_deg = p.n();
    let mut d = Vec::with_capacity(n_max + 1);
    d.push(Complex64::new(leading_coefficient(n_deg), 0.0));
    let scale = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI)); // −1/(2πi)
    for n in 1..=n_max {
        let mut sum = CompensatedSum::new(Complex64::new(0.0, 0.0));
        let mut magnitude = 0.0;
        for jj in 0..n {
            let j = 2 * jj + 1;
            let a = table.get(2 * (n - jj - 1) as isize, j as isize);
            if a == Complex64::new(0.0, 0.0) || integral_vanishes(n_deg, n, j) {
                continue;
            }
            let contrib = a * contour_integral_closed(n_deg, n, j)?;
            magnitude += contrib.norm();
            sum.add(contrib);
        }
        let total = sum.total();
        d.push(if total.norm() <= CANCELLATION_FLOOR * magnitude { Complex64::new(0.0, 0.0) } else { scale * total });
    }
    EnergySeries::new(n_deg, p.hbar(), d)
}

/// The shortest series holding `count` nonzero coefficients (`d₀` included).
pub fn series_with_nonzero_terms(p: &Potential, count: usize) -> Result<EnergySeries> {
    if count == 0 {
        return Err(AeeError::Domain("at least one series term is required".into()));
    }
    let mut n_max = (2 * count).max(8);
    loop {
        let s = d_coefficients(p, n_max)?;
        let nz = s.nonzero_indices();
        if nz.len() >= count {
            return s.truncated(nz[count - 1]);
        }
        if n_max >= MAX_ORDER {
            return Err(AeeError::Domain(format!("only {} nonzero coefficients up to order {MAX_ORDER}", nz.len())));
        }
        n_max = (2 * n_max).min(MAX_ORDER);
    }
}

/// The four-term series for `V = (ix)^{2N+1} + b x`:
/// `J = b₀E^{(2N+3)/(4N+2)} − ℏ/2 + b_{4N}E^{−(2N−3)/(4N+2)} + b_{4N+6}E^{−(2N+3)/(4N+2)}`
/// with `b_{4N} = (−1)^N 2ib sin(π/M) Γ(2/M) / (√π (4N+2) Γ(½ + 2/M))`.
///
/// Stored as `d₀ = b₀`, `d_{2N} = b_{4N}`, `d_{2N+3} = b_{4N+6}`, other slots zero.
pub fn two_term_series(n_deg: usize, b: Complex64, hbar: f64) -> Result<EnergySeries> {
    if n_deg == 0 {
        return Err(AeeError::Domain("N must be at least 1".into()));
    }
    let pi = std::f64::consts::PI;
    let m = (2 * n_deg + 1) as f64;
    let b0 = leading_coefficient(n_deg);
    let sign_n = if n_deg % 2 == 0 { 1.0 } else { -1.0 };
    let b_lin = Complex64::new(0.0, 2.0 * sign_n) * b * (pi / m).sin() * gamma(2.0 / m)
        / (pi.sqrt() * (4 * n_deg + 2) as f64 * gamma(0.5 + 2.0 / m));
    let b_hbar = 2.0
        * n_deg as f64
        * hbar
        * hbar
        * ((4 * n_deg + 1) as f64 * pi / (4 * n_deg + 2) as f64).cos()
        * gamma(1.0 - 1.0 / m)
        / (12.0 * pi.sqrt() * gamma(0.5 - 1.0 / m));

    let mut d = vec![Complex64::new(0.0, 0.0); 2 * n_deg + 4];
    d[0] = Complex64::new(b0, 0.0);
    d[2 * n_deg] = b_lin;
    d[2 * n_deg + 3] = Complex64::new(b_hbar, 0.0);
    EnergySeries::new(n_deg, hbar, d)
}

/// Neumaier summation on real and imaginary parts.
struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    fn new(start: Complex64) -> Self {
        CompensatedSum { sum: start, comp: Complex64::new(0.0, 0.0) }
    }

    fn add(&mut self, x: Complex64) {
        let (s_re, c_re) = neumaier(self.sum.re, x.re);
        let (s_im, c_im) = neumaier(self.sum.im, x.im);
        self.sum = Complex64::new(s_re, s_im);
        self.comp += Complex64::new(c_re, c_im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    (t, c)
}
