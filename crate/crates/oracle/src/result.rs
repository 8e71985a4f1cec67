//! Common result record for all oracles.

use std::collections::BTreeMap;

use aee_core::complex_serde;
use aee_core::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Diagonalization,
    Shooting,
    Contour,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub kind: OracleKind,
    #[serde(with = "complex_serde::vec")]
    pub values: Vec<Complex64>,
    /// Per-value error estimate from a refinement step.
    pub errors: Vec<f64>,
    /// Per-value flag: the refinement step agreed within its threshold.
    pub converged: Vec<bool>,
    /// Run parameters and diagnostics, e.g. basis size or step count.
    pub meta: BTreeMap<String, f64>,
}

impl OracleResult {
    pub fn new(kind: OracleKind) -> Self {
        OracleResult { kind, values: Vec::new(), errors: Vec::new(), converged: Vec::new(), meta: BTreeMap::new() }
    }

    pub fn push(&mut self, value: Complex64, error: f64, converged: bool) {
        self.values.push(value);
        self.errors.push(error);
        self.converged.push(converged);
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().copied().fold(0.0, f64::max)
    }
}
