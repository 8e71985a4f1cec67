//! Job configuration: the JSON schema, defaults, validation and presets.

use std::ops::Range;
use std::path::Path;

use aee_core::series::{series_with_nonzero_terms, two_term_series};
use aee_core::{Complex64, EnergySeries, Potential, Truncation};
use aee_oracle::OracleKind;
use aee_validation::{published_table, PublishedTable};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Largest accepted `n_terms`.
pub const MAX_TERMS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRange {
    pub start: usize,
    pub end: usize,
}

impl LevelRange {
    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

impl Default for LevelRange {
    fn default() -> Self {
        LevelRange { start: 0, end: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default)]
    pub json: bool,
}

fn yes() -> bool {
    true
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { csv: true, json: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleChoice {
    #[default]
    None,
    Diag,
    Shoot,
    Both,
}

impl OracleChoice {
    pub fn kinds(self) -> Vec<OracleKind> {
        match self {
            OracleChoice::None => vec![],
            OracleChoice::Diag => vec![OracleKind::Diagonalization],
            OracleChoice::Shoot => vec![OracleKind::Shooting],
            OracleChoice::Both => vec![OracleKind::Diagonalization, OracleKind::Shooting],
        }
    }
}

/// Where the series is cut when solving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationChoice {
    /// Keep all `n_terms` nonzero terms.
    #[default]
    Full,
    /// Cut before the smallest term at each energy.
    Optimal,
}

/// Which construction produces the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesForm {
    /// The general closed form, `n_terms` nonzero coefficients.
    #[default]
    General,
    /// The four-term closed form for `V = (ix)^M + bx`; ignores `n_terms`.
    TwoTerm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub potential: Potential,
    /// Nonzero coefficients `d_n` kept, counting `d₀` and not the constant `−ℏ/2`.
    #[serde(default = "default_n_terms")]
    pub n_terms: usize,
    #[serde(default)]
    pub levels: LevelRange,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub oracle: OracleChoice,
    #[serde(default)]
    pub truncation: TruncationChoice,
    #[serde(default)]
    pub series: SeriesForm,
}

fn default_n_terms() -> usize {
    25
}

fn default_tol() -> f64 {
    1e-12
}

impl JobConfig {
    pub fn new(potential: Potential) -> Self {
        JobConfig {
            potential,
            n_terms: default_n_terms(),
            levels: LevelRange::default(),
            tol: default_tol(),
            outputs: Outputs::default(),
            oracle: OracleChoice::default(),
            truncation: TruncationChoice::default(),
            series: SeriesForm::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: JobConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The configuration of published table `number`, with its default oracle.
    pub fn preset(number: u8) -> Result<(Self, PublishedTable)> {
        let t = published_table(number).ok_or_else(|| CliError::Config(format!("no table {number}")))?;
        let cfg = JobConfig {
            n_terms: t.nonzero_terms,
            levels: LevelRange { start: 0, end: t.levels() },
            oracle: match t.oracle {
                OracleKind::Diagonalization => OracleChoice::Diag,
                _ => OracleChoice::Shoot,
            },
            ..JobConfig::new(t.potential.clone())
        };
        Ok((cfg, t))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n_terms == 0 || self.n_terms > MAX_TERMS {
            return bad(format!("n_terms must be in 1..={MAX_TERMS}, got {}", self.n_terms));
        }
        if self.levels.start > self.levels.end {
            return bad(format!("levels.start {} exceeds levels.end {}", self.levels.start, self.levels.end));
        }
        if !(self.tol.is_finite() && self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("tol must be in (0, 1), got {}", self.tol));
        }
        if !(self.outputs.csv || self.outputs.json) {
            return bad("at least one of outputs.csv and outputs.json must be set".into());
        }
        if self.series == SeriesForm::TwoTerm && self.linear_coefficient().is_none() {
            return bad("series \"two_term\" needs a potential whose only nonzero beta is the linear one".into());
        }
        Ok(())
    }

    /// `b` when the potential is `(ix)^M + bx`.
    fn linear_coefficient(&self) -> Option<Complex64> {
        let betas = self.potential.betas();
        let (last, rest) = betas.split_last()?;
        rest.iter().all(|z| z.norm() == 0.0).then_some(*last)
    }

    pub fn build_series(&self) -> Result<EnergySeries> {
        let s = match self.series {
            SeriesForm::General => series_with_nonzero_terms(&self.potential, self.n_terms)?,
            SeriesForm::TwoTerm => {
                let b = self.linear_coefficient().ok_or_else(|| CliError::Config("not a two-term potential".into()))?;
                two_term_series(self.potential.n(), b, self.potential.hbar())?
            }
        };
        Ok(s)
    }

    pub fn truncation_for(&self, series: &EnergySeries) -> Truncation {
        match self.truncation {
            TruncationChoice::Full => Truncation::Fixed(series.n_max()),
            TruncationChoice::Optimal => Truncation::Optimal,
        }
    }
}
