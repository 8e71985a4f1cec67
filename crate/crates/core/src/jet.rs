//! Truncated power series ("jets") in one complex variable.
//!
//! A jet of length `D` centered at `y0` stores the Taylor coefficients
//! `c_k = f^{(k)}(y0)/k!` for `k < D`. Arithmetic is exact up to truncation.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<Complex64>,
}

impl Jet {
    pub fn zero(len: usize) -> Self {
        assert!(len > 0, "jet length must be positive");
        Jet { c: vec![Complex64::new(0.0, 0.0); len] }
    }

    pub fn constant(v: Complex64, len: usize) -> Self {
        let mut j = Jet::zero(len);
        j.c[0] = v;
        j
    }

    /// The identity function `y` expanded at `y0`.
    pub fn variable(y0: Complex64, len: usize) -> Self {
        let mut j = Jet::constant(y0, len);
        if len > 1 {
            j.c[1] = Complex64::new(1.0, 0.0);
        }
        j
    }

    pub fn from_coeffs(c: Vec<Complex64>) -> Self {
        assert!(!c.is_empty(), "jet length must be positive");
        Jet { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        Jet { c: self.c.iter().map(|&v| v * s).collect() }
    }

    pub fn powu(&self, k: u32) -> Jet {
        let mut out = Jet::constant(Complex64::new(1.0, 0.0), self.len());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `1/f`. Panics if `f(y0) = 0`.
    pub fn recip(&self) -> Jet {
        let a0 = self.c[0];
        assert!(a0.norm() > 0.0, "reciprocal of a jet with zero constant term");
        let n = self.len();
        let mut r = vec![Complex64::new(0.0, 0.0); n];
        r[0] = a0.inv();
        for k in 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 1..=k {
                s += self.c[i] * r[k - i];
            }
            r[k] = -s * r[0];
        }
        Jet { c: r }
    }

    pub fn div(&self, other: &Jet) -> Jet {
        self * &other.recip()
    }

    /// Square root whose constant term is `root0`, which must satisfy `root0² = f(y0)`.
    /// The caller picks the branch.
    pub fn sqrt_with(&self, root0: Complex64) -> Jet {
        assert!(root0.norm() > 0.0, "square root at a zero of the argument");
        let n = self.len();
        let mut r = vec![Complex64::new(0.0, 0.0); n];
        r[0] = root0;
        let inv2r0 = (2.0 * root0).inv();
        for k in 1..n {
            let mut s = self.c[k];
            for i in 1..k {
                s -= r[i] * r[k - i];
            }
            r[k] = s * inv2r0;
        }
        Jet { c: r }
    }

    /// `d/dy`. The top coefficient of the result is unknown and set to zero,
    /// so each derivative costs one order of accuracy.
    pub fn derivative(&self) -> Jet {
        let mut r: Vec<Complex64> = self.c.iter().enumerate().skip(1).map(|(k, &v)| v * k as f64).collect();
        r.push(Complex64::new(0.0, 0.0));
        Jet { c: r }
    }

    fn zip_with(&self, other: &Jet, f: impl Fn(Complex64, Complex64) -> Complex64) -> Jet {
        assert_eq!(self.len(), other.len(), "jet length mismatch");
        Jet { c: self.c.iter().zip(&other.c).map(|(&a, &b)| f(a, b)).collect() }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.iter().map(|&v| -v).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        assert_eq!(self.len(), rhs.len(), "jet length mismatch");
        let n = self.len();
        let mut r = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.c.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in rhs.c[..n - i].iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Jet { c: r }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        &self + &rhs
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        &self - &rhs
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Jet, b: &Jet, tol: f64) -> bool {
        a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= tol * (1.0 + y.norm()))
    }

    #[test]
    fn sqrt_of_one_minus_y() {
        // √(1−y) = 1 − y/2 − y²/8 − y³/16 − 5y⁴/128
        let one = Jet::constant(c(1.0, 0.0), 5);
        let y = Jet::variable(c(0.0, 0.0), 5);
        let r = (&one - &y).sqrt_with(c(1.0, 0.0));
        let want = [1.0, -0.5, -0.125, -0.0625, -5.0 / 128.0];
        for (got, w) in r.coeffs().iter().zip(want) {
            assert!((got - w).norm() < 1e-16);
        }
    }

    #[test]
    fn geometric_series() {
        let one = Jet::constant(c(1.0, 0.0), 6);
        let y = Jet::variable(c(0.0, 0.0), 6);
        let r = (&one - &y).recip();
        assert!(r.coeffs().iter().all(|v| (v - 1.0).norm() < 1e-16));
    }

    #[test]
    fn derivative_of_cube_at_a_point() {
        // y³ at y0 = 2: 8 + 12h + 6h² + h³; derivative 12 + 12h + 3h²
        let y = Jet::variable(c(2.0, 0.0), 4);
        let d = y.powu(3).derivative();
        let want = [12.0, 12.0, 3.0, 0.0];
        for (got, w) in d.coeffs().iter().zip(want) {
            assert!((got - w).norm() < 1e-14);
        }
    }

    fn jet(len: usize) -> impl Strategy<Value = Jet> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len).prop_map(|v| {
            let mut coeffs: Vec<Complex64> = v.into_iter().map(|(a, b)| c(a, b)).collect();
            coeffs[0] += c(2.0, 0.5); // keep away from zero
            Jet::from_coeffs(coeffs)
        })
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(a in jet(7), b in jet(7)) {
            let back = (&a * &b).div(&b);
            prop_assert!(close(&back, &a, 1e-12));
        }

        #[test]
        fn sqrt_squares_back(a in jet(7)) {
            let r = a.sqrt_with(a.value().sqrt());
            prop_assert!(close(&(&r * &r), &a, 1e-12));
        }

        #[test]
        fn product_rule(a in jet(7), b in jet(7)) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            // the top coefficient is undefined after differentiation
            let n = lhs.len() - 1;
            for k in 0..n {
                prop_assert!((lhs.coeffs()[k] - rhs.coeffs()[k]).norm() < 1e-12);
            }
        }
    }
}
