//! Eigenvalues of `H = p² + V(x)` in a truncated harmonic-oscillator basis.
//!
//! With ladder operators `a, a†` of frequency `ω`:
//! `x = (a + a†)/√(2ω)` and `p² = −ℏ²(ω/2)(a† − a)²`.

use aee_core::{Complex64, Potential};
use nalgebra::{DMatrix, Schur};

use crate::error::{OracleError, Result};
use crate::result::{OracleKind, OracleResult};

/// Oscillator frequency used when none is given. Works for every degree up to nine.
pub const DEFAULT_OMEGA: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagOptions {
    /// Smaller of the two basis sizes; `None` picks `max(16·count, 64)`.
    pub basis_size: Option<usize>,
    pub omega: f64,
    /// Accept a value when doubling the basis moves it less than this, relative.
    pub rel_tol: f64,
}

impl Default for DiagOptions {
    fn default() -> Self {
        DiagOptions { basis_size: None, omega: DEFAULT_OMEGA, rel_tol: 1e-6 }
    }
}

/// The `basis_size × basis_size` matrix of `H`.
pub fn ho_hamiltonian_matrix(p: &Potential, basis_size: usize, omega: f64) -> Result<DMatrix<Complex64>> {
    Ok(potential_matrix(p, basis_size, omega)? + kinetic_matrix(basis_size, omega, p.hbar())?)
}

/// `p² = −ℏ²(ω/2)(a† − a)²`: diagonal `ℏ²ω(2k+1)/2`, second off-diagonal `−ℏ²(ω/2)√((k+1)(k+2))`.
pub fn kinetic_matrix(basis_size: usize, omega: f64, hbar: f64) -> Result<DMatrix<Complex64>> {
    check_args(basis_size, omega)?;
    let scale = hbar * hbar * omega / 2.0;
    let mut t = DMatrix::<Complex64>::zeros(basis_size, basis_size);
    for k in 0..basis_size {
        t[(k, k)] = Complex64::new(scale * (2 * k + 1) as f64, 0.0);
        if k + 2 < basis_size {
            let off = Complex64::new(-scale * (((k + 1) * (k + 2)) as f64).sqrt(), 0.0);
            t[(k, k + 2)] = off;
            t[(k + 2, k)] = off;
        }
    }
    Ok(t)
}

/// `V(x)` with `x = (a + a†)/√(2ω)`.
///
/// Powers of `x` are formed in a basis enlarged by `2N+3` states and cropped,
/// so every retained element is exact.
pub fn potential_matrix(p: &Potential, basis_size: usize, omega: f64) -> Result<DMatrix<Complex64>> {
    check_args(basis_size, omega)?;
    let m = p.degree();
    let big = basis_size + m + 2;

    // ⟨k|x|k+1⟩ = √((k+1)/(2ω))
    let x_off: Vec<f64> = (0..big - 1).map(|k| ((k + 1) as f64 / (2.0 * omega)).sqrt()).collect();

    // Horner: V = ((c_M x + c_{M−1}) x + …) x, with c_M = i^M and c_{M−k} = β_k.
    let mut v = DMatrix::<Complex64>::from_diagonal_element(big, big, p.leading_coefficient());
    for power in (1..m).rev() {
        v = times_x(&v, &x_off);
        let c = p.beta(m - power);
        if c != Complex64::new(0.0, 0.0) {
            for k in 0..big {
                v[(k, k)] += c;
            }
        }
    }
    v = times_x(&v, &x_off);
    Ok(v.view((0, 0), (basis_size, basis_size)).into_owned())
}

fn check_args(basis_size: usize, omega: f64) -> Result<()> {
    if basis_size < 4 {
        return Err(OracleError::InvalidArgument(format!("basis size {basis_size} is below 4")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(OracleError::InvalidArgument(format!("omega must be positive, got {omega}")));
    }
    Ok(())
}

/// `P·x` for the symmetric tridiagonal `x` with zero diagonal.
fn times_x(p: &DMatrix<Complex64>, x_off: &[f64]) -> DMatrix<Complex64> {
    let n = p.nrows();
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            if j > 0 {
                s += p[(i, j - 1)] * x_off[j - 1];
            }
            if j + 1 < n {
                s += p[(i, j + 1)] * x_off[j];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// All eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues(h: DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let size = h.nrows();
    let schur = Schur::try_new(h, f64::EPSILON, 100_000).ok_or(OracleError::Eigensolver { size })?;
    let (_, t) = schur.unpack();
    Ok((0..size).map(|i| t[(i, i)]).collect())
}

/// The `count` lowest eigenvalues (by real part) that are stable under basis doubling.
///
/// Values that fail the doubling test are only used to fill the list when too
/// few pass, and are flagged as not converged.
pub fn diag_spectrum(p: &Potential, count: usize, opts: &DiagOptions) -> Result<OracleResult> {
    if count == 0 {
        return Err(OracleError::InvalidArgument("count must be at least 1".into()));
    }
    let b = opts.basis_size.unwrap_or((16 * count).max(64));
    let (small, large) = rayon::join(
        || ho_hamiltonian_matrix(p, b, opts.omega).and_then(eigenvalues),
        || ho_hamiltonian_matrix(p, 2 * b, opts.omega).and_then(eigenvalues),
    );
    let (small, large) = (small?, large?);

    let mut scored: Vec<(Complex64, f64, bool)> = small
        .iter()
        .map(|&v| {
            let shift = large.iter().map(|&w| (w - v).norm()).fold(f64::INFINITY, f64::min);
            (v, shift, shift < opts.rel_tol * v.norm().max(1.0))
        })
        .collect();
    scored.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
    let mut chosen: Vec<(Complex64, f64, bool)> = scored.iter().filter(|s| s.2).take(count).copied().collect();
    if chosen.len() < count {
        chosen.extend(scored.iter().filter(|s| !s.2).take(count - chosen.len()).copied());
        chosen.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
    }

    let mut out = OracleResult::new(OracleKind::Diagonalization);
    for (v, err, ok) in chosen {
        out.push(v, err, ok);
    }
    out.meta.insert("basis_size".into(), b as f64);
    out.meta.insert("basis_size_refined".into(), (2 * b) as f64);
    out.meta.insert("omega".into(), opts.omega);
    out.meta.insert("error_estimate".into(), out.max_error());
    out.meta.insert("accepted".into(), out.converged.iter().filter(|&&c| c).count() as f64);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use aee_core::I;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = Potential::two_term(1, I, 1.0).unwrap();
        assert!(ho_hamiltonian_matrix(&p, 3, 1.0).is_err());
        assert!(ho_hamiltonian_matrix(&p, 8, 0.0).is_err());
        assert!(diag_spectrum(&p, 0, &DiagOptions::default()).is_err());
    }

    #[test]
    fn cubic_matrix_elements() {
        // For (ix)³ = −i x³ with ω = ½: x = (a+a†), ⟨0|x³|1⟩ = 3.
        let p = Potential::two_term(1, c(0.0, 0.0), 1.0).unwrap();
        let h = ho_hamiltonian_matrix(&p, 6, 0.5).unwrap();
        assert!((h[(0, 1)] - c(0.0, -3.0)).norm() < 1e-14);
        assert!((h[(0, 0)] - c(0.25, 0.0)).norm() < 1e-14);
        // ⟨0|x³|3⟩ = √6, only reachable through states above the crop for a 4-state basis.
        let h4 = ho_hamiltonian_matrix(&p, 4, 0.5).unwrap();
        assert!((h4[(0, 3)] - c(0.0, -(6f64).sqrt())).norm() < 1e-14);
    }

    #[test]
    fn kinetic_term_is_positive() {
        let t = kinetic_matrix(24, 2.0, 0.7).unwrap();
        let ev = eigenvalues(t).unwrap();
        assert!(ev.iter().all(|e| e.re > 0.0 && e.im.abs() < 1e-10));
    }

    #[test]
    fn parts_add_up() {
        let p = Potential::two_term(2, c(0.3, 1.0), 0.8).unwrap();
        let h = ho_hamiltonian_matrix(&p, 10, 3.0).unwrap();
        let sum = potential_matrix(&p, 10, 3.0).unwrap() + kinetic_matrix(10, 3.0, 0.8).unwrap();
        assert_eq!(h, sum);
    }
}
