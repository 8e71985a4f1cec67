//! The `A_{s,l}` coefficient table.
//!
//! With `t = y^{(2N+1)/2}/a₀` and `a₀ = √(1 − y^{2N+1})`, every Riccati
//! coefficient has the closed form
//!
//! ```text
//! a_m(y) = −y^{(2N+1−m)/2} Σ_l A_{m−1−l, l} t^l        (m ≥ 1)
//! ```
//!
//! Seeds: `A_{2k−2,1} = β_k i^{−(2N+1−k)}/2` for `k = 1..2N`, and
//! `A_{2N,2} = −(2N+1)ℏ/4`. For `l ≥ 2` (the seed excepted)
//!
//! ```text
//! A_{s,l} = ½ Σ_{t<l} Σ_{i≤s} A_{s−i,l−t−1} A_{i,t}
//!         + (ℏ/4)(s − 2N(l+1) − 2) A_{s−2N−2,l−1}
//!         − (ℏ/4)(2N+1)(l−3) A_{s−2N,l−3}
//! ```
//!
//! Only even `s` is ever populated. One table serves both parities of `m`:
//! odd-`m` coefficients read the same entries, so the "odd family" is this
//! table with the first index shifted by one (see [`Family`]).

use num_complex::Complex64;

use crate::potential::Potential;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Which parity of `m` an index pair is quoted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `a_{2m}`: indices are used as stored.
    Even,
    /// `a_{2m+1}`: the pair `(s, l)` names the stored entry `(s+1, l)`.
    Odd,
}

#[derive(Debug, Clone)]
pub struct CoefficientTable {
    n_deg: usize,
    hbar: f64,
    max_index: usize,
    /// `rows[l][s]` for `s + l < max_index`.
    rows: Vec<Vec<Complex64>>,
}

impl CoefficientTable {
    /// Table sufficient for `a_m` with `1 ≤ m ≤ max_index`, i.e. every pair
    /// with `s + l ≤ max_index − 1`.
    pub fn build(p: &Potential, max_index: usize) -> Self {
        let seed = Complex64::new(-((2 * p.n() + 1) as f64) * p.hbar() / 4.0, 0.0);
        Self::build_with_hbar_seed(p, max_index, seed)
    }

    /// As [`build`](Self::build) with the `ℏ`-linear seed `A_{2N,2}` replaced.
    /// Exists so validation can prove it detects a corrupted seed.
    pub fn build_with_hbar_seed(p: &Potential, max_index: usize, hbar_seed: Complex64) -> Self {
        let n = p.n();
        let m = 2 * n + 1;
        let hbar = p.hbar();
        let k_max = max_index; // s + l ≤ k_max − 1
        let mut rows: Vec<Vec<Complex64>> = (0..k_max.max(1)).map(|l| vec![ZERO; k_max.saturating_sub(l)]).collect();

        let get = |rows: &Vec<Vec<Complex64>>, s: isize, l: isize| -> Complex64 {
            if s < 0 || l < 0 {
                return ZERO;
            }
            rows.get(l as usize).and_then(|r| r.get(s as usize)).copied().unwrap_or(ZERO)
        };

        for k in 1..=2 * n {
            let s = 2 * k - 2;
            if s + 1 < k_max {
                rows[1][s] = p.beta(k) * i_pow(-((m - k) as i64)) / 2.0;
            }
        }
        if 2 * n + 2 < k_max {
            rows[2][2 * n] = hbar_seed;
        }

        let two_n = 2 * n as isize;
        for l in 2..k_max {
            for s in 0..k_max - l {
                if l == 2 && s == 2 * n {
                    continue;
                }
                let (si, li) = (s as isize, l as isize);
                let mut conv = ZERO;
                for t in 1..l - 1 {
                    let left = l - t - 1;
                    for i in 0..=s {
                        let a = get(&rows, (s - i) as isize, left as isize);
                        if a != ZERO {
                            conv += a * get(&rows, i as isize, t as isize);
                        }
                    }
                }
                let mut v = 0.5 * conv;
                v += get(&rows, si - two_n - 2, li - 1) * (0.25 * hbar * (si - two_n * (li + 1) - 2) as f64);
                v -= get(&rows, si - two_n, li - 3) * (0.25 * hbar * m as f64 * (li - 3) as f64);
                rows[l][s] = v;
            }
        }

        CoefficientTable { n_deg: n, hbar, max_index, rows }
    }

    pub fn n_deg(&self) -> usize {
        self.n_deg
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Largest `m` whose closed form is fully covered.
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// `A_{s,l}`; zero for negative or unreached indices.
    pub fn get(&self, s: isize, l: isize) -> Complex64 {
        if s < 0 || l < 0 {
            return ZERO;
        }
        self.rows.get(l as usize).and_then(|r| r.get(s as usize)).copied().unwrap_or(ZERO)
    }

    pub fn family_entry(&self, family: Family, s: isize, l: isize) -> Complex64 {
        match family {
            Family::Even => self.get(s, l),
            Family::Odd => self.get(s + 1, l),
        }
    }

    /// Nonzero stored entries as `(s, l, A_{s,l})`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().enumerate().filter(|(_, v)| **v != ZERO).map(move |(s, &v)| (s, l, v)))
    }
}

/// `i^k` for any integer `k`, exactly.
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::I;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn seeds() {
        let p = Potential::two_term(2, I, 1.0).unwrap();
        let t = CoefficientTable::build(&p, 20);
        // A_{2N,2} = −(2N+1)ℏ/4
        assert_eq!(t.get(4, 2), c(-1.25, 0.0));
        // β₄ sits at s = 6 with phase i^{-1}: i·(−i)/2 = ½
        assert!((t.get(6, 1) - c(0.5, 0.0)).norm() < 1e-16);
        assert_eq!(t.get(0, 1), c(0.0, 0.0));
        assert_eq!(t.get(-1, 3), c(0.0, 0.0));
    }

    #[test]
    fn hbar_seed_scales_linearly() {
        let p = Potential::two_term(3, c(0.3, -0.2), 1.0).unwrap();
        let t1 = CoefficientTable::build(&p, 16);
        let t2 = CoefficientTable::build(&p.with_hbar(2.0).unwrap(), 16);
        assert_eq!(t2.get(6, 2), 2.0 * t1.get(6, 2));
        for k in 0..6 {
            assert_eq!(t1.get(2 * k, 1), t2.get(2 * k, 1));
        }
    }

    #[test]
    fn odd_family_is_a_shift() {
        let p = Potential::new(1, vec![c(0.3, 0.0), c(0.0, 0.7)], 1.0).unwrap();
        let t = CoefficientTable::build(&p, 12);
        assert_eq!(t.family_entry(Family::Odd, 1, 2), t.get(2, 2));
        assert_eq!(t.family_entry(Family::Even, 2, 2), t.get(2, 2));
    }

    #[test]
    fn i_pow_cycles() {
        assert_eq!(i_pow(0), c(1.0, 0.0));
        assert_eq!(i_pow(-1), c(0.0, -1.0));
        assert_eq!(i_pow(7), c(0.0, -1.0));
    }
}
