//! The four published spectra, with the Hamiltonians that produced them.
//!
//! Each table lists the expansion column and the exact column for `ℏ = 1`.
//! `nonzero_terms` is the number of nonzero `d_n` (including `d₀`) that
//! reproduces the expansion column at fixed truncation.

use aee_core::series::series_with_nonzero_terms;
use aee_core::solver::{solve_range, EnergyLevel, SolverOptions, Truncation};
use aee_core::{Complex64, Potential, Result, I};
use aee_oracle::OracleKind;

#[derive(Debug, Clone)]
pub struct PublishedTable {
    pub number: u8,
    pub label: &'static str,
    pub potential: Potential,
    pub nonzero_terms: usize,
    pub aee: Vec<Complex64>,
    pub exact: Vec<Complex64>,
    /// Oracle that reproduces the exact column.
    pub oracle: OracleKind,
}

impl PublishedTable {
    pub fn levels(&self) -> usize {
        self.aee.len()
    }

    /// Solves the expansion column: the series cut after `nonzero_terms`
    /// nonzero coefficients, at fixed truncation.
    pub fn solve_aee(&self) -> Result<Vec<Result<EnergyLevel>>> {
        let s = series_with_nonzero_terms(&self.potential, self.nonzero_terms)?;
        let opts = SolverOptions { truncation: Truncation::Fixed(s.n_max()), ..Default::default() };
        Ok(solve_range(&s, 0..self.levels(), &opts))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

const Z: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Tables 1 to 4; `None` for any other number.
pub fn published_table(number: u8) -> Option<PublishedTable> {
    let t = match number {
        1 => PublishedTable {
            number,
            label: "V = (ix)^5 + ix",
            potential: Potential::new(2, vec![Z, Z, Z, I], 1.0).ok()?,
            nonzero_terms: 6,
            aee: real(&[
                1.415221, 4.868558, 9.517600, 15.03904, 21.27666, 28.13384, 35.54327, 43.45471, 51.82880, 60.63369,
                69.84293, 79.43411,
            ]),
            exact: real(&[
                1.624377, 4.820135, 9.522461, 15.03806, 21.27658, 28.13374, 35.54322, 43.45467, 51.82877, 60.63367,
                69.84292, 79.43411,
            ]),
            oracle: OracleKind::Diagonalization,
        },
        2 => PublishedTable {
            number,
            label: "V = (ix)^5 + (1+i)x",
            potential: Potential::new(2, vec![Z, Z, Z, c(1.0, 1.0)], 1.0).ok()?,
            nonzero_terms: 6,
            aee: vec![
                c(1.385058, -0.39235),
                c(4.857391, -0.49947),
                c(9.511001, -0.57092),
                c(15.03433, -0.62534),
                c(21.27298, -0.67002),
                c(28.13080, -0.70831),
                c(35.54068, -0.74204),
                c(43.45244, -0.77233),
                c(51.82678, -0.79992),
                c(60.63186, -0.82532),
                c(69.84126, -0.84890),
                c(79.43258, -0.87096),
            ],
            exact: vec![
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
            ],
            oracle: OracleKind::Diagonalization,
        },
        3 => PublishedTable {
            number,
            label: "V = (ix)^7 + x^6 + ix^5 + x^2",
            potential: Potential::new(3, vec![ONE, I, Z, Z, ONE, Z], 1.0).ok()?,
            nonzero_terms: 17,
            aee: real(&[
                1.5699863, 5.1604902, 10.477845, 17.144275, 24.969982, 33.833308, 43.646903, 54.343821, 65.870498,
                78.182742, 91.243245, 105.01993,
            ]),
            exact: real(&[
                1.4585541, 5.1861926, 10.479973, 17.145466, 24.970596, 33.833555, 43.647038, 54.343906, 65.870553,
                78.182781, 91.243274, 105.01995,
            ]),
            oracle: OracleKind::Shooting,
        },
        4 => PublishedTable {
            number,
            label: "V = (ix)^9 + x^2 + ix",
            potential: Potential::new(4, vec![Z, Z, Z, Z, Z, Z, ONE, I], 1.0).ok()?,
            nonzero_terms: 25,
            aee: real(&[
                1.8453697, 5.7301601, 11.834124, 19.733814, 29.209838, 40.121601, 52.367271, 65.868043, 80.560282,
                96.391051, 113.31531,
            ]),
            exact: real(&[
                1.7229882, 5.7860546, 11.847978, 19.732860, 29.209369, 40.121580, 52.367288, 65.868047, 80.560283,
                96.391052, 113.31531,
            ]),
            oracle: OracleKind::Shooting,
        },
        _ => return None,
    };
    Some(t)
}

pub fn all_tables() -> Vec<PublishedTable> {
    (1..=4).filter_map(published_table).collect()
}
