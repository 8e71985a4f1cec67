//! Randomized invariants of the series and solver.

use aee_core::series::{d_coefficients, EnergySeries, SeriesRecord};
use aee_core::solver::{solve_level, SolverOptions};
use aee_core::{Complex64, Potential};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random PT-symmetric potential: real odd-index, imaginary even-index couplings.
fn pt_potential() -> impl Strategy<Value = Potential> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(-1.0f64..1.0, 2 * n).prop_map(move |v| {
            let betas =
                v.iter().enumerate().map(|(i, &x)| if (i + 1) % 2 == 1 { c(x, 0.0) } else { c(0.0, x) }).collect();
            Potential::new(n, betas, 1.0).unwrap()
        })
    })
}

fn any_potential() -> impl Strategy<Value = Potential> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * n)
            .prop_map(move |v| Potential::new(n, v.into_iter().map(|(a, b)| c(a, b)).collect(), 1.0).unwrap())
    })
}

/// `β_k → (−1)^{k+1} conj(β_k)`, the image of the potential under PT.
fn pt_image(p: &Potential) -> Potential {
    let betas =
        p.betas().iter().enumerate().map(|(i, b)| if (i + 1) % 2 == 1 { b.conj() } else { -b.conj() }).collect();
    Potential::new(p.n(), betas, p.hbar()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pt_symmetric_series_is_real(p in pt_potential()) {
        let s = d_coefficients(&p, 16).unwrap();
        for n in 0..=16 {
            let d = s.d(n);
            prop_assert!(d.im.abs() <= 1e-12 * (1.0 + d.re.abs()), "d_{} = {}", n, d);
        }
    }

    #[test]
    fn pt_image_conjugates_the_series(p in any_potential()) {
        let s = d_coefficients(&p, 14).unwrap();
        let t = d_coefficients(&pt_image(&p), 14).unwrap();
        for n in 0..=14 {
            prop_assert!((s.d(n).conj() - t.d(n)).norm() <= 1e-12 * (1.0 + s.d(n).norm()));
        }
    }

    #[test]
    fn pt_image_conjugates_the_levels(p in any_potential(), n in 2usize..8) {
        let opts = SolverOptions::default();
        let s = d_coefficients(&p, 12).unwrap();
        let t = d_coefficients(&pt_image(&p), 12).unwrap();
        let a = solve_level(&s, n, &opts).unwrap();
        let b = solve_level(&t, n, &opts).unwrap();
        prop_assert!((a.energy.conj() - b.energy).norm() <= 1e-9 * a.energy.norm());
    }

    #[test]
    fn derivative_matches_finite_difference(p in any_potential(), re in 2.0f64..200.0, im in -5.0f64..5.0) {
        let s = d_coefficients(&p, 12).unwrap();
        let e = c(re, im);
        let h = 1e-5 * re;
        let k = s.n_max();
        let fd = (s.eval_j(e + h, k).unwrap() - s.eval_j(e - h, k).unwrap()) / (2.0 * h);
        let exact = s.eval_j_derivative(e, k).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()));
    }

    #[test]
    fn optimal_truncation_is_the_smallest_term(p in any_potential(), re in 1.0f64..100.0) {
        let s = d_coefficients(&p, 20).unwrap();
        let e = c(re, 0.0);
        let k = s.optimal_truncation(e).unwrap();
        let at_k = s.term(e, k).unwrap().norm();
        for i in s.nonzero_indices().into_iter().filter(|&i| i >= 1) {
            prop_assert!(s.term(e, i).unwrap().norm() >= at_k);
        }
    }

    #[test]
    fn records_round_trip(p in any_potential()) {
        let s = d_coefficients(&p, 10).unwrap();
        let json = serde_json::to_string(&s.to_records()).unwrap();
        let back: Vec<SeriesRecord> = serde_json::from_str(&json).unwrap();
        let t = EnergySeries::from_records(&back).unwrap();
        prop_assert_eq!(t.nonzero_indices(), s.nonzero_indices());
        for i in s.nonzero_indices() {
            prop_assert_eq!(t.d(i), s.d(i));
        }
    }
}
