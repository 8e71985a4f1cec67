//! Number formatting, level tables and atomic file writes.

use std::io::Write;
use std::path::Path;

use aee_core::{Complex64, EnergyLevel, EnergySeries};
use aee_oracle::{OracleKind, OracleResult};
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::config::JobConfig;
use crate::error::{CliError, Result};

/// `x` to seven significant digits: fixed notation for `10⁻⁴ ≤ |x| < 10⁷`,
/// scientific otherwise.
pub fn sig7(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.6e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-4..7).contains(&exp) {
        format!("{x:.*}", (6 - exp) as usize)
    } else {
        sci
    }
}

/// One row of a level table. `level` is `None` when the level failed.
#[derive(Debug, Clone, Serialize)]
pub struct LevelRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<EnergyLevel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// An oracle spectrum aligned with the level rows.
#[derive(Debug, Clone, Serialize)]
pub struct OracleColumn {
    pub result: OracleResult,
    /// Level index of `result.values[0]`.
    pub first_level: usize,
}

impl OracleColumn {
    fn value(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(self.first_level).and_then(|i| self.result.values.get(i)).copied()
    }
}

/// Published columns for preset runs.
#[derive(Debug, Clone, Serialize)]
pub struct Published {
    pub table: u8,
    #[serde(with = "aee_core::complex_serde::vec")]
    pub aee: Vec<Complex64>,
    #[serde(with = "aee_core::complex_serde::vec")]
    pub exact: Vec<Complex64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub config: JobConfig,
    pub levels: Vec<LevelRow>,
    pub oracles: Vec<OracleColumn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<Published>,
}

fn suffix(kind: OracleKind) -> &'static str {
    match kind {
        OracleKind::Diagonalization => "diag",
        OracleKind::Shooting => "shoot",
        OracleKind::Contour => "contour",
    }
}

impl SolveReport {
    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["n", "re_E", "im_E", "residual", "k_trunc", "converged"].map(String::from).to_vec();
        for o in &self.oracles {
            let s = suffix(o.result.kind);
            h.extend([format!("re_E_{s}"), format!("im_E_{s}"), format!("abs_diff_{s}")]);
        }
        if self.published.is_some() {
            h.extend(
                ["re_E_published_aee", "im_E_published_aee", "re_E_published_exact", "im_E_published_exact"]
                    .map(String::from),
            );
        }
        h
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        let blank = String::new;
        self.levels
            .iter()
            .map(|row| {
                let mut r = vec![row.n.to_string()];
                match &row.level {
                    Some(l) => r.extend([
                        sig7(l.energy.re),
                        sig7(l.energy.im),
                        sig7(l.residual),
                        l.k_trunc.to_string(),
                        l.converged.to_string(),
                    ]),
                    None => r.extend([blank(), blank(), blank(), blank(), "false".to_string()]),
                }
                for o in &self.oracles {
                    match o.value(row.n) {
                        Some(v) => {
                            r.extend([sig7(v.re), sig7(v.im)]);
                            r.push(row.level.as_ref().map(|l| sig7((l.energy - v).norm())).unwrap_or_default());
                        }
                        None => r.extend([blank(), blank(), blank()]),
                    }
                }
                if let Some(p) = &self.published {
                    for col in [&p.aee, &p.exact] {
                        match col.get(row.n) {
                            Some(v) => r.extend([sig7(v.re), sig7(v.im)]),
                            None => r.extend([blank(), blank()]),
                        }
                    }
                }
                r
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header())?;
        for r in self.rows() {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| CliError::Io { path: "<csv buffer>".into(), source: e.into_error() })
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut v = serde_json::to_vec_pretty(self)?;
        v.push(b'\n');
        Ok(v)
    }
}

/// Human-readable coefficient listing.
pub fn coefficient_table(series: &EnergySeries) -> String {
    let mut out = format!("N = {}, hbar = {}\n", series.n_deg(), sig7(series.hbar()));
    out.push_str(&format!("{:>4}  {:>10}  {:>24}  {:>24}\n", "n", "exponent", "re d_n", "im d_n"));
    out.push_str(&format!("{:>4}  {:>10}  {:>24}  {:>24}\n", "-", "0", format!("{:.16e}", series.constant().re), "0"));
    for n in series.nonzero_indices() {
        let e = series.exponent(n);
        let d = series.d(n);
        out.push_str(&format!(
            "{n:>4}  {:>10}  {:>24}  {:>24}\n",
            format!("{}/{}", e.num, e.den),
            format!("{:.16e}", d.re),
            format!("{:.16e}", d.im)
        ));
    }
    out
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// renamed into place once complete.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_significant_digits() {
        assert_eq!(sig7(79.434112), "79.43411");
        assert_eq!(sig7(1.4152206), "1.415221");
        assert_eq!(sig7(-0.8489043), "-0.8489043");
        assert_eq!(sig7(105.019934), "105.0199");
        assert_eq!(sig7(0.0), "0");
        assert_eq!(sig7(3.2e-12), "3.200000e-12");
        assert_eq!(sig7(9.99999996), "10.00000");
        assert_eq!(sig7(12345678.0), "1.234568e7");
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
