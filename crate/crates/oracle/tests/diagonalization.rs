//! Oscillator-basis spectra against the published exact columns.

use aee_core::{Complex64, Potential, I};
use aee_oracle::diag::{diag_spectrum, ho_hamiltonian_matrix, DiagOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn quintic(b: Complex64) -> Potential {
    let z = c(0.0, 0.0);
    Potential::new(2, vec![z, z, z, b], 1.0).unwrap()
}

#[test]
fn quintic_with_imaginary_linear_term() {
    let want = [
        1.624377, 4.820135, 9.522461, 15.03806, 21.27658, 28.13374, 35.54322, 43.45467, 51.82877, 60.63367, 69.84292,
        79.43411,
    ];
    let r = diag_spectrum(&quintic(I), 12, &DiagOptions::default()).unwrap();
    assert!(r.converged.iter().all(|&ok| ok));
    for (n, (&got, &w)) in r.values.iter().zip(&want).enumerate() {
        assert!((got.re - w).abs() < 1e-4 && got.im.abs() < 1e-8, "n={n}: {got} vs {w}");
    }
    assert!(r.meta["error_estimate"] < 1e-6 * 80.0);
}

#[test]
fn quintic_with_complex_linear_term() {
    let want = [
        c(1.529177, -0.55265),
        c(4.826487, -0.45524),
        c(9.514849, -0.57341),
        c(15.03380, -0.62425),
        c(21.27301, -0.66976),
        c(28.13078, -0.70813),
        c(35.54067, -0.74193),
        c(43.45244, -0.77226),
        c(51.82677, -0.79987),
        c(60.63186, -0.82528),
        c(69.84126, -0.84887),
        c(79.43258, -0.87093),
    ];
    let r = diag_spectrum(&quintic(c(1.0, 1.0)), 12, &DiagOptions::default()).unwrap();
    for (n, (&got, &w)) in r.values.iter().zip(&want).enumerate() {
        assert!((got.re - w.re).abs() < 1e-4 && (got.im - w.im).abs() < 1e-4, "n={n}: {got} vs {w}");
    }
}

#[test]
fn values_are_sorted_by_real_part() {
    let r = diag_spectrum(&quintic(c(0.5, 0.2)), 6, &DiagOptions::default()).unwrap();
    assert!(r.values.windows(2).all(|w| w[0].re <= w[1].re));
    assert_eq!(r.values.len(), 6);
    assert!(r.meta.contains_key("error_estimate"));
}

#[test]
fn pt_symmetric_matrix_is_parity_conjugate() {
    // S = diag((−1)^k): PT symmetry of V means H = S·conj(H)·S.
    let z = c(0.0, 0.0);
    for p in [quintic(I), Potential::new(3, vec![c(1.0, 0.0), I, z, z, c(1.0, 0.0), z], 1.0).unwrap()] {
        assert!(p.is_pt_symmetric());
        let h = ho_hamiltonian_matrix(&p, 40, 4.0).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..40 {
            for j in 0..40 {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((h[(i, j)] - sign * h[(i, j)].conj()).norm());
            }
        }
        assert!(worst < 1e-12, "{worst}");
    }
}

#[test]
fn pt_symmetric_spectrum_is_conjugation_closed() {
    let p = Potential::new(1, vec![c(0.4, 0.0), c(0.0, -0.3)], 1.0).unwrap();
    assert!(p.is_pt_symmetric());
    let r = diag_spectrum(&p, 8, &DiagOptions::default()).unwrap();
    for &v in &r.values {
        let partner = r.values.iter().map(|w| (w - v.conj()).norm()).fold(f64::INFINITY, f64::min);
        assert!(partner < 1e-8 * v.norm().max(1.0), "{v}");
    }
}
