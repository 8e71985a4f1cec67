//! Loop quadrature against the Γ closed forms and the series coefficients.

use aee_core::integrals::{contour_integral_closed, integral_vanishes};
use aee_core::series::d_coefficients;
use aee_core::{Complex64, Potential, I};
use aee_oracle::contour::{
    b_coefficients_numeric, contour_integral_numeric, contour_integral_on, d_coefficients_numeric, LoopGeometry,
    DEFAULT_MARGIN,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn odd_powers_match_closed_form() {
    for n_deg in 1..=3usize {
        for n in 0..=8usize {
            for j in [1usize, 3, 5] {
                let num = contour_integral_numeric(n_deg, n, j, DEFAULT_MARGIN).unwrap();
                let closed = contour_integral_closed(n_deg, n, j).unwrap();
                if integral_vanishes(n_deg, n, j) {
                    assert!(num.norm() < 1e-10, "N={n_deg} n={n} j={j}: {num}");
                } else {
                    assert!((num - closed).norm() < 1e-8 * closed.norm(), "N={n_deg} n={n} j={j}: {num} vs {closed}");
                }
            }
        }
    }
}

#[test]
fn even_powers_do_not_vanish() {
    // Half-integer powers of y leave a nonzero loop integral in general.
    // For the quintic none of the low orders vanish.
    for n in 0..=8usize {
        for j in [2usize, 4] {
            assert!(!integral_vanishes(2, n, j));
            let num = contour_integral_numeric(2, n, j, DEFAULT_MARGIN).unwrap();
            assert!(num.norm() > 1e-2, "n={n} j={j}: {num}");
        }
    }
}

#[test]
fn loop_shape_does_not_matter() {
    for n_deg in 1..=3usize {
        let wide = LoopGeometry::standard(n_deg, 0.35);
        let g = LoopGeometry::standard(n_deg, DEFAULT_MARGIN);
        let narrow = LoopGeometry { semi_real: 0.6 * g.semi_real, ..g };
        for (n, j) in [(0usize, 1usize), (3, 3), (5, 2)] {
            let a = contour_integral_on(&g, n_deg, n, j).unwrap();
            for other in [wide, narrow] {
                let b = contour_integral_on(&other, n_deg, n, j).unwrap();
                assert!((a - b).norm() < 1e-9 * a.norm().max(1.0), "N={n_deg} n={n} j={j}");
            }
        }
    }
}

#[test]
fn loop_quadrature_reproduces_series_coefficients() {
    let z = c(0.0, 0.0);
    let cases = [
        Potential::new(1, vec![c(0.3, 0.0), c(0.0, 0.7)], 1.0).unwrap(),
        Potential::new(2, vec![z, z, z, I], 1.0).unwrap(),
        Potential::new(2, vec![c(0.2, -0.1), c(0.5, 0.4), z, c(1.0, 1.0)], 0.6).unwrap(),
        Potential::new(3, vec![c(1.0, 0.0), I, z, z, c(1.0, 0.0), z], 1.0).unwrap(),
    ];
    for p in cases {
        let numeric = d_coefficients_numeric(&p, 10, 1500).unwrap();
        let closed = d_coefficients(&p, 10).unwrap();
        for (n, &a) in numeric.iter().enumerate() {
            let b = closed.d(n);
            assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "N={} d_{n}: {a} vs {b}", p.n());
        }
    }
}

#[test]
fn odd_b_coefficients_vanish_except_the_constant() {
    let p = Potential::new(2, vec![c(0.2, -0.1), c(0.5, 0.4), c(0.0, 0.3), c(1.0, 1.0)], 0.7).unwrap();
    let b = b_coefficients_numeric(&p, 21, 1500).unwrap();
    for m in (1..=21).step_by(2) {
        if m == 7 {
            assert!((b[m] - c(-0.35, 0.0)).norm() < 1e-10, "{}", b[m]);
        } else {
            assert!(b[m].norm() < 1e-10, "b_{m} = {}", b[m]);
        }
    }
}
