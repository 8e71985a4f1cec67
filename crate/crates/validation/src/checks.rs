//! Individual cross-checks. Each returns a [`Check`] carrying its tolerance and
//! the worst deviation seen; an error inside a check counts as an infinite deviation.

use aee_core::integrals::{contour_integral_closed, integral_vanishes};
use aee_core::riccati::{a_m_closed_form, a_n_taylor, radical_from_origin};
use aee_core::series::{d_coefficients, d_coefficients_from_table, series_with_nonzero_terms, two_term_series};
use aee_core::table::CoefficientTable;
use aee_core::{Complex64, Potential, I};
use aee_oracle::contour::{b_coefficients_numeric, contour_integral_numeric, DEFAULT_MARGIN};
use aee_oracle::diag::{diag_spectrum, DiagOptions};
use aee_oracle::shooting::{shoot_spectrum, ShootOptions};
use aee_oracle::OracleKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::tables::PublishedTable;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub tolerance: f64,
    pub deviation: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, tolerance: f64, deviation: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            tolerance,
            deviation,
            passed: deviation.is_finite() && deviation <= tolerance,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, tolerance: f64, r: Result<(f64, String), String>) -> Self {
        match r {
            Ok((dev, detail)) => Check::new(name, tolerance, dev, detail),
            Err(e) => Check::new(name, tolerance, f64::INFINITY, e),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Worst of `|a − b|/|b|`, or `|a|/scale` where `b` is exactly zero.
fn coefficientwise(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    a.iter()
        .zip(b)
        .map(|(x, y)| if y.norm() > 0.0 { (x - y).norm() / y.norm() } else { x.norm() / scale })
        .fold(0.0, f64::max)
}

/// A potential with every coefficient nonzero and distinct, for table-level checks.
pub fn generic_potential(n_deg: usize, hbar: f64) -> Potential {
    let betas = (1..=2 * n_deg).map(|k| c(0.3 / k as f64, 0.2 * (k as f64 - 1.5))).collect();
    Potential::new(n_deg, betas, hbar).expect("valid coefficients")
}

/// A PT-symmetric potential: `β_k` real for odd `k`, imaginary for even `k`.
pub fn pt_potential(n_deg: usize) -> Potential {
    let betas = (1..=2 * n_deg)
        .map(|k| if k % 2 == 1 { c(0.4 / k as f64, 0.0) } else { c(0.0, 0.5 - 0.1 * k as f64) })
        .collect();
    Potential::new(n_deg, betas, 1.0).expect("valid coefficients")
}

/// General series against the four-term form for `V = (ix)^M + bx`,
/// `b ∈ {i, 1+i}`, over `d₀ … d_{2N+3}`. With `corrupt_seed` the general
/// path is built from a table whose `A_{2N,2}` seed is off by half.
pub fn two_path_equality(n_degs: &[usize], corrupt_seed: bool) -> Check {
    let r = (|| {
        let mut worst = 0.0f64;
        for &n in n_degs {
            for b in [I, c(1.0, 1.0)] {
                let p = Potential::two_term(n, b, 1.0).map_err(err)?;
                let n_max = 2 * n + 3;
                let two = two_term_series(n, b, 1.0).map_err(err)?;
                let general = if corrupt_seed {
                    let seed = c(-1.5 * (2 * n + 1) as f64 * p.hbar() / 4.0, 0.0);
                    let table = CoefficientTable::build_with_hbar_seed(&p, 2 * n_max, seed);
                    d_coefficients_from_table(&p, &table, n_max).map_err(err)?
                } else {
                    d_coefficients(&p, n_max).map_err(err)?
                };
                worst = worst.max(coefficientwise(general.coefficients(), two.coefficients()));
            }
        }
        Ok((
            worst,
            format!(
                "N in {n_degs:?}, b in {{i, 1+i}}, d_0..d_(2N+3){}",
                if corrupt_seed { ", corrupted A_(2N,2)" } else { "" }
            ),
        ))
    })();
    Check::from_result("two_path_equality", 1e-12, r)
}

/// Loop quadrature against the Γ closed form for odd `j`, relative; and the
/// cases the closed form sends to zero, absolute.
pub fn contour_vs_gamma(n_degs: &[usize], n_top: usize, j_top: usize) -> Vec<Check> {
    let mut matched = Ok((0.0f64, 0usize));
    let mut vanishing = Ok((0.0f64, 0usize));
    for &nd in n_degs {
        for n in 0..=n_top {
            for j in 0..=j_top {
                if integral_vanishes(nd, n, j) {
                    if let Ok((w, k)) = vanishing {
                        vanishing = contour_integral_numeric(nd, n, j, DEFAULT_MARGIN)
                            .map(|v| (w.max(v.norm()), k + 1))
                            .map_err(|e| format!("N={nd} n={n} j={j}: {e}"));
                    }
                } else if j % 2 == 1 {
                    if let Ok((w, k)) = matched {
                        matched = (|| {
                            let num = contour_integral_numeric(nd, n, j, DEFAULT_MARGIN).map_err(err)?;
                            let closed = contour_integral_closed(nd, n, j).map_err(err)?;
                            Ok((w.max((num - closed).norm() / closed.norm()), k + 1))
                        })()
                        .map_err(|e: String| format!("N={nd} n={n} j={j}: {e}"));
                    }
                }
            }
        }
    }
    let range = format!("N in {n_degs:?}, n <= {n_top}, j <= {j_top}");
    vec![
        Check::from_result("contour_vs_gamma", 1e-8, matched.map(|(w, k)| (w, format!("{k} odd-j cases, {range}")))),
        Check::from_result(
            "contour_vanishing_cases",
            1e-10,
            vanishing.map(|(w, k)| (w, format!("{k} cases with a vanishing closed form, {range}"))),
        ),
    ]
}

/// The Riccati recurrence against the table closed form at `points` random
/// points of the unit disk kept `0.1` away from every root of unity, for all
/// indices `1 ..= 4N+6`, relative.
pub fn taylor_vs_closed_form(n_degs: &[usize], points: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = (|| {
        let mut worst = 0.0f64;
        for &n in n_degs {
            let m = 2 * n + 1;
            let betas = (0..2 * n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let p = Potential::new(n, betas, rng.gen_range(0.5..1.5)).map_err(err)?;
            let top = 4 * n + 6;
            let table = CoefficientTable::build(&p, top);
            let mut taken = 0;
            while taken < points {
                let y =
                    Complex64::from_polar(rng.gen_range(0.0f64..0.9).sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
                let near_root = (0..m).any(|k| {
                    (y - Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64)).norm() < 0.1
                });
                if near_root {
                    continue;
                }
                taken += 1;
                for idx in 1..=top {
                    let t = a_n_taylor(&p, y, idx, None).map_err(err)?;
                    let cf = a_m_closed_form(&table, y, idx).map_err(err)?;
                    let scale = t.norm().max(cf.norm());
                    if scale > 0.0 {
                        worst = worst.max((t - cf).norm() / scale);
                    }
                }
            }
        }
        Ok((worst, format!("{points} points per N, N in {n_degs:?}, indices 1..=4N+6, seed {seed}")))
    })();
    Check::from_result("taylor_vs_closed_form", 1e-9, r)
}

/// `a₀`, `a_{2N+3}`, `a_{4N}` and `a_{4N+6}` for `V = (ix)^M + bx` against
/// their explicit forms, through both the recurrence and the table.
pub fn hand_listed_coefficients(n_degs: &[usize]) -> Check {
    let r = (|| {
        let mut worst = 0.0f64;
        let (hbar, b) = (0.9, c(0.4, -0.7));
        for &n in n_degs {
            let p = Potential::two_term(n, b, hbar).map_err(err)?;
            let m = (2 * n + 1) as i32;
            let mf = m as f64;
            let table = CoefficientTable::build(&p, 4 * n + 6);
            for y in [c(0.35, 0.2), c(-0.1, 0.5), c(0.2, -0.45)] {
                let a0 = radical_from_origin(n, y);
                let w = 1.0 - y.powi(m);
                let a_h = hbar * mf * y.powi(m - 1) / (4.0 * w);
                let a_h_prime = hbar * mf / 4.0 * ((mf - 1.0) * y.powi(m - 2) * w + mf * y.powi(2 * m - 2)) / (w * w);
                let cases = [
                    (0, a0),
                    (2 * n + 3, a_h),
                    (4 * n, -b * y / (2.0 * I * a0)),
                    (4 * n + 6, -(a_h * a_h + hbar * a_h_prime) / (2.0 * a0)),
                ];
                for (idx, want) in cases {
                    worst = worst.max((a_n_taylor(&p, y, idx, None).map_err(err)? - want).norm() / want.norm());
                    if idx > 0 {
                        worst = worst.max((a_m_closed_form(&table, y, idx).map_err(err)? - want).norm() / want.norm());
                    }
                }
            }
        }
        Ok((worst, format!("V = (ix)^M + bx, N in {n_degs:?}, 3 points")))
    })();
    Check::from_result("hand_listed_coefficients", 1e-12, r)
}

/// Every stored `A_{s,l}` has even `s`; the deviation counts violations.
pub fn table_parity(n_degs: &[usize]) -> Check {
    let mut bad = 0usize;
    let mut total = 0usize;
    for &n in n_degs {
        let table = CoefficientTable::build(&generic_potential(n, 0.8), 6 * n + 10);
        for (s, _, _) in table.nonzero_entries() {
            total += 1;
            if s % 2 == 1 {
                bad += 1;
            }
        }
    }
    Check::new("table_parity_exclusion", 0.0, bad as f64, format!("{total} nonzero entries, N in {n_degs:?}"))
}

/// Loop quadrature of every `a_m`: odd `b_m` vanish except `b_{2N+3} = −ℏ/2`.
pub fn odd_b_vanish(n_degs: &[usize]) -> Check {
    let r = (|| {
        let mut worst = 0.0f64;
        for &n in n_degs {
            let p = generic_potential(n, 0.7);
            let b = b_coefficients_numeric(&p, 4 * n + 8, 1500).map_err(err)?;
            for (m, v) in b.iter().enumerate().filter(|(m, _)| m % 2 == 1) {
                let want = if m == 2 * n + 3 { c(-p.hbar() / 2.0, 0.0) } else { c(0.0, 0.0) };
                worst = worst.max((v - want).norm());
            }
        }
        Ok((worst, format!("odd m <= 4N+8, N in {n_degs:?}, 1500-point quadrature")))
    })();
    Check::from_result("odd_b_vanish", 1e-9, r)
}

/// Even `b_{2n}` by quadrature against the closed-form `d_n`, relative to the largest.
pub fn quadrature_vs_series(n_degs: &[usize]) -> Check {
    let r = (|| {
        let mut worst = 0.0f64;
        for &n in n_degs {
            let p = generic_potential(n, 0.7);
            let n_max = 2 * n + 4;
            let b = b_coefficients_numeric(&p, 2 * n_max, 1500).map_err(err)?;
            let d = d_coefficients(&p, n_max).map_err(err)?;
            let scale = d.coefficients().iter().map(|z| z.norm()).fold(0.0, f64::max);
            for k in 0..=n_max {
                worst = worst.max((b[2 * k] - d.d(k)).norm() / scale);
            }
        }
        Ok((worst, format!("d_0..d_(2N+4), N in {n_degs:?}")))
    })();
    Check::from_result("quadrature_vs_series", 1e-9, r)
}

/// PT-symmetric potentials give real `d_n`; deviation is the worst `|Im d_n|/|d_n|`.
pub fn pt_reality(n_degs: &[usize]) -> Check {
    let r = (|| {
        let mut worst = 0.0f64;
        for &n in n_degs {
            let p = pt_potential(n);
            if !p.is_pt_symmetric() {
                return Err(format!("N={n}: test potential is not PT-symmetric"));
            }
            let s = d_coefficients(&p, 6 * n).map_err(err)?;
            for z in s.coefficients().iter().filter(|z| z.norm() > 0.0) {
                worst = worst.max(z.im.abs() / z.norm());
            }
        }
        Ok((worst, format!("d_0..d_6N, N in {n_degs:?}")))
    })();
    Check::from_result("pt_reality_of_series", 1e-13, r)
}

/// Oscillator-basis spectrum of a PT-symmetric potential is closed under conjugation.
pub fn pt_oracle_conjugation(levels: usize) -> Check {
    let r = (|| {
        let p = Potential::new(1, vec![c(0.4, 0.0), c(0.0, -0.3)], 1.0).map_err(err)?;
        let spectrum = diag_spectrum(&p, levels, &DiagOptions::default()).map_err(err)?;
        let mut worst = 0.0f64;
        for &v in &spectrum.values {
            let partner = spectrum.values.iter().map(|w| (w - v.conj()).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(partner / v.norm().max(1.0));
        }
        Ok((worst, format!("V = (ix)^3 + 0.4x^2 - 0.3ix, {levels} levels")))
    })();
    Check::from_result("pt_oracle_conjugation", 1e-8, r)
}

/// `dJ/dE` against a central difference on Table 1's series, relative.
pub fn newton_derivative(potential: &Potential) -> Check {
    let r = (|| {
        let s = series_with_nonzero_terms(potential, 6).map_err(err)?;
        let mut worst = 0.0f64;
        for e in [c(1.5, 0.0), c(10.0, 0.3), c(40.0, -2.0), c(80.0, 1.0)] {
            let h = 1e-5 * e.norm();
            let k = s.n_max();
            let fd = (s.eval_j(e + h, k).map_err(err)? - s.eval_j(e - h, k).map_err(err)?) / (2.0 * h);
            let fd_im = (s.eval_j(e + I * h, k).map_err(err)? - s.eval_j(e - I * h, k).map_err(err)?) / (2.0 * I * h);
            let exact = s.eval_j_derivative(e, k).map_err(err)?;
            worst = worst.max((fd - exact).norm() / exact.norm()).max((fd_im - exact).norm() / exact.norm());
        }
        Ok((worst, "central differences along both axes, h = 1e-5|E|".to_string()))
    })();
    Check::from_result("newton_derivative_fd", 1e-7, r)
}

/// Diagonalization and shooting for the same potential, pairwise.
pub fn oracle_triangle(potential: &Potential, levels: usize) -> Check {
    let r = (|| {
        let d = diag_spectrum(potential, levels, &DiagOptions::default()).map_err(err)?;
        let s = shoot_spectrum(potential, &d.values, &ShootOptions::default()).map_err(err)?;
        let worst = d.values.iter().zip(&s.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        Ok((worst, format!("first {levels} levels")))
    })();
    Check::from_result("oracle_triangle", 1e-4, r)
}

/// Expansion column of a published table at fixed truncation, absolute per entry.
pub fn table_aee(t: &PublishedTable, tolerance: f64) -> Check {
    let r = (|| {
        let levels = t.solve_aee().map_err(err)?;
        let mut worst = 0.0f64;
        for (lvl, want) in levels.into_iter().zip(&t.aee) {
            let lvl = lvl.map_err(err)?;
            worst = worst.max((lvl.energy.re - want.re).abs()).max((lvl.energy.im - want.im).abs());
        }
        Ok((worst, format!("{}, {} nonzero terms, n = 0..{}", t.label, t.nonzero_terms, t.levels() - 1)))
    })();
    Check::from_result(&format!("table{}_aee", t.number), tolerance, r)
}

/// Exact column of a published table from its oracle, levels `first..`,
/// absolute per part. Shooting starts from the expansion column.
pub fn table_exact(t: &PublishedTable, first: usize, tolerance: f64) -> Check {
    let r = (|| {
        let values = match t.oracle {
            OracleKind::Diagonalization => {
                diag_spectrum(&t.potential, t.levels(), &DiagOptions::default()).map_err(err)?.values
            }
            _ => {
                let guesses: Vec<Complex64> = t
                    .solve_aee()
                    .map_err(err)?
                    .into_iter()
                    .zip(&t.aee)
                    .map(|(l, &fallback)| l.map(|l| l.energy).unwrap_or(fallback))
                    .collect();
                shoot_spectrum(&t.potential, &guesses, &ShootOptions::default()).map_err(err)?.values
            }
        };
        let worst = values
            .iter()
            .zip(&t.exact)
            .skip(first)
            .map(|(got, want)| (got.re - want.re).abs().max((got.im - want.im).abs()))
            .fold(0.0, f64::max);
        Ok((worst, format!("{}, {:?} oracle, n = {first}..{}", t.label, t.oracle, t.levels() - 1)))
    })();
    Check::from_result(&format!("table{}_exact", t.number), tolerance, r)
}
