//! Odd-degree polynomial potentials `V(x) = (ix)^(2N+1) + Σ β_k x^(2N+1−k)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AeeError, Result};

/// Absolute tolerance on the part of a coefficient that PT symmetry requires to vanish.
pub const PT_TOLERANCE: f64 = 1e-14;

/// A validated potential. `betas[k-1]` multiplies `x^(2N+1-k)`; the leading
/// coefficient `i^(2N+1)` is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PotentialSpec", into = "PotentialSpec")]
pub struct Potential {
    n: usize,
    betas: Vec<Complex64>,
    hbar: f64,
}

/// JSON form: `{"N": 2, "betas": [[0,0],[0,0],[0,0],[0,1]], "hbar": 1.0}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "crate::complex_serde::vec")]
    pub betas: Vec<Complex64>,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
}

fn default_hbar() -> f64 {
    1.0
}

impl TryFrom<PotentialSpec> for Potential {
    type Error = AeeError;
    fn try_from(s: PotentialSpec) -> Result<Self> {
        Potential::new(s.n, s.betas, s.hbar)
    }
}

impl From<Potential> for PotentialSpec {
    fn from(p: Potential) -> Self {
        PotentialSpec { n: p.n, betas: p.betas, hbar: p.hbar }
    }
}

/// The two branch points of `√(1 − y^(2N+1))` enclosed by the integration loop.
/// They form a complex-conjugate pair `e^{±iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPointPair {
    pub left: Complex64,
    pub right: Complex64,
}

impl Potential {
    pub fn new(n: usize, betas: Vec<Complex64>, hbar: f64) -> Result<Self> {
        if n == 0 {
            return Err(AeeError::Domain("N must be at least 1 (odd degree 2N+1 ≥ 3)".into()));
        }
        if betas.len() != 2 * n {
            return Err(AeeError::Dimension { expected: 2 * n, got: betas.len() });
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(AeeError::Domain(format!("hbar must be positive and finite, got {hbar}")));
        }
        if betas.iter().any(|b| !(b.re.is_finite() && b.im.is_finite())) {
            return Err(AeeError::Domain("coefficients must be finite".into()));
        }
        Ok(Potential { n, betas, hbar })
    }

    /// `V = (ix)^(2N+1) + b·x`, the two-term family.
    pub fn two_term(n: usize, b: Complex64, hbar: f64) -> Result<Self> {
        let mut betas = vec![Complex64::new(0.0, 0.0); 2 * n];
        if n > 0 {
            betas[2 * n - 1] = b;
        }
        Potential::new(n, betas, hbar)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Polynomial degree `2N+1`.
    pub fn degree(&self) -> usize {
        2 * self.n + 1
    }

    pub fn betas(&self) -> &[Complex64] {
        &self.betas
    }

    /// `β_k` with the one-based index of the coefficient list.
    pub fn beta(&self, k: usize) -> Complex64 {
        self.betas[k - 1]
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        Potential::new(self.n, self.betas.clone(), hbar)
    }

    /// `i^(2N+1) = (−1)^N i`.
    pub fn leading_coefficient(&self) -> Complex64 {
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(0.0, sign)
    }

    /// Odd-k coefficients real and even-k coefficients imaginary, which is
    /// equivalent to `conj(V(−conj x)) = V(x)`.
    pub fn is_pt_symmetric(&self) -> bool {
        self.betas.iter().enumerate().all(|(idx, b)| {
            let k = idx + 1;
            if k % 2 == 1 {
                b.im.abs() <= PT_TOLERANCE
            } else {
                b.re.abs() <= PT_TOLERANCE
            }
        })
    }

    pub fn evaluate(&self, x: Complex64) -> Complex64 {
        let mut acc = self.leading_coefficient();
        for &b in &self.betas {
            acc = acc * x + b;
        }
        acc * x
    }

    /// `V'(x)`.
    pub fn evaluate_derivative(&self, x: Complex64) -> Complex64 {
        let m = self.degree();
        let mut acc = self.leading_coefficient() * m as f64;
        for (idx, &b) in self.betas.iter().enumerate() {
            let power = m - 1 - idx;
            acc = acc * x + b * power as f64;
        }
        acc
    }

    pub fn branch_points(&self) -> BranchPointPair {
        branch_points(self.n)
    }
}

/// Branch points `(−1)^N e^{iNπ/(2N+1)}` and `(−1)^{N+1} e^{i(N+1)π/(2N+1)}`,
/// evaluated as exact roots of unity `e^{2πi·r/(2N+1)}` with `r` reduced mod `2N+1`.
pub fn branch_points(n: usize) -> BranchPointPair {
    let m = 2 * n + 1;
    let root = |r: usize| {
        let theta = 2.0 * PI * (r % m) as f64 / m as f64;
        Complex64::from_polar(1.0, theta)
    };
    BranchPointPair { left: root(n * (n + 1)), right: root((n + 1) * (n + 1)) }
}

/// Angle `φ ∈ (0, π)` with branch points `e^{±iφ}`: `φ = 2π⌊(N+1)/2⌋/(2N+1)`.
pub fn branch_angle(n: usize) -> f64 {
    2.0 * PI * n.div_ceil(2) as f64 / (2 * n + 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::I;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(Potential::new(2, vec![c(0.0, 0.0); 3], 1.0), Err(AeeError::Dimension { expected: 4, got: 3 }));
        assert!(matches!(Potential::new(0, vec![], 1.0), Err(AeeError::Domain(_))));
        assert!(matches!(Potential::new(1, vec![c(0.0, 0.0); 2], 0.0), Err(AeeError::Domain(_))));
    }

    #[test]
    fn evaluates_small_cases() {
        let cubic = Potential::new(1, vec![c(0.0, 0.0); 2], 1.0).unwrap();
        assert!((cubic.evaluate(c(1.0, 0.0)) - c(0.0, -1.0)).norm() < 1e-15);

        let p = Potential::two_term(2, I, 1.0).unwrap();
        assert_eq!(p.evaluate(c(0.0, 0.0)), c(0.0, 0.0));
        assert!((p.evaluate(c(1.0, 0.0)) - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let p =
            Potential::new(3, vec![c(1.0, 0.0), I, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 1.0).unwrap();
        let x = c(0.4, -0.7);
        let h = 1e-6;
        let fd = (p.evaluate(x + h) - p.evaluate(x - h)) / (2.0 * h);
        assert!((fd - p.evaluate_derivative(x)).norm() < 1e-8 * fd.norm());
    }

    #[test]
    fn classifies_table_potentials() {
        assert!(Potential::two_term(2, I, 1.0).unwrap().is_pt_symmetric());
        assert!(!Potential::two_term(2, c(1.0, 1.0), 1.0).unwrap().is_pt_symmetric());
        let seventh =
            Potential::new(3, vec![c(1.0, 0.0), I, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 1.0).unwrap();
        assert!(seventh.is_pt_symmetric());
        let ninth = {
            let mut b = vec![c(0.0, 0.0); 8];
            b[6] = c(1.0, 0.0);
            b[7] = I;
            Potential::new(4, b, 1.0).unwrap()
        };
        assert!(ninth.is_pt_symmetric());
    }

    #[test]
    fn branch_points_for_small_degrees() {
        let bp = branch_points(1);
        assert!((bp.left - Complex64::from_polar(1.0, 4.0 * PI / 3.0)).norm() < 1e-15);
        assert!((bp.right - Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm() < 1e-15);

        let bp = branch_points(2);
        assert!((bp.left - Complex64::from_polar(1.0, 2.0 * PI / 5.0)).norm() < 1e-15);
        assert!((bp.right - Complex64::from_polar(1.0, 8.0 * PI / 5.0)).norm() < 1e-15);
    }

    #[test]
    fn branch_points_match_the_signed_exponential_form() {
        for n in 1..=10usize {
            let m = (2 * n + 1) as f64;
            let sign = |e: usize| if e % 2 == 0 { 1.0 } else { -1.0 };
            let left = Complex64::from_polar(sign(n), n as f64 * PI / m);
            let right = Complex64::from_polar(sign(n + 1), (n + 1) as f64 * PI / m);
            let bp = branch_points(n);
            assert!((bp.left - left).norm() < 1e-14);
            assert!((bp.right - right).norm() < 1e-14);
            assert!((bp.left - bp.right.conj()).norm() < 1e-14);
            let phi = branch_angle(n);
            assert!(
                (bp.right - Complex64::from_polar(1.0, phi)).norm() < 1e-14
                    || (bp.left - Complex64::from_polar(1.0, phi)).norm() < 1e-14
            );
        }
    }

    #[test]
    fn branch_points_are_roots_of_unity() {
        for n in 1..=10usize {
            let bp = branch_points(n);
            for y in [bp.left, bp.right] {
                assert!((y.powu(2 * n as u32 + 1) - 1.0).norm() < 1e-13, "N={n}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"N": 2, "betas": [[0,0],[0,0],[0,0],[0,1]], "hbar": 1.0}"#;
        let p: Potential = serde_json::from_str(json).unwrap();
        assert_eq!(p, Potential::two_term(2, I, 1.0).unwrap());
        let back: Potential = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Potential>(r#"{"N": 2, "betas": [[0,0]], "hbar": 1.0}"#).is_err());
    }

    fn pt_potential() -> impl Strategy<Value = Potential> {
        (1usize..=4).prop_flat_map(|n| {
            proptest::collection::vec(-2.0f64..2.0, 2 * n).prop_map(move |vals| {
                let betas = vals
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if (i + 1) % 2 == 1 { c(v, 0.0) } else { c(0.0, v) })
                    .collect();
                Potential::new(n, betas, 1.0).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn pt_identity_holds(p in pt_potential(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
            prop_assert!(p.is_pt_symmetric());
            let x = c(re, im);
            let lhs = p.evaluate(-x.conj()).conj();
            let rhs = p.evaluate(x);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn classification_is_stable_under_tiny_perturbations(p in pt_potential(), k in 0usize..8, eps in -1e-15f64..1e-15) {
            let mut betas = p.betas().to_vec();
            let k = k % betas.len();
            if (k + 1) % 2 == 1 { betas[k].im += eps } else { betas[k].re += eps }
            let q = Potential::new(p.n(), betas, 1.0).unwrap();
            prop_assert!(q.is_pt_symmetric());
        }

        #[test]
        fn breaking_perturbations_are_detected(p in pt_potential(), k in 0usize..8, eps in 1e-6f64..1.0) {
            let mut betas = p.betas().to_vec();
            let k = k % betas.len();
            if (k + 1) % 2 == 1 { betas[k].im += eps } else { betas[k].re += eps }
            let q = Potential::new(p.n(), betas, 1.0).unwrap();
            prop_assert!(!q.is_pt_symmetric());
        }
    }
}
