//! Experiment configuration files.
//!
//! Configs are TOML documents with four sections:
//!
//! ```toml
//! [model]
//! kind = "harmonic"        # or "spin_half"
//! topology = "ring_nn"     # or "star"
//! n = 16                   # or n_list = [8, 16, 32]
//! c = 0.4                  # harmonic coupling
//! h = 0.0                  # spin field
//!
//! [schedule]               # exactly one of T_list, beta_list, T_range
//! beta_list = [2.5, 2.4, 2.0]
//! # T_range = [0.5, 4.0]
//! # count = 50
//!
//! [partitions]
//! families = ["even-odd", "half-half"]
//! blocks_nb = [1, 2, 3]    # optional, for "blocks"
//! external_sites = [2]     # optional, for "external"
//!
//! [run]
//! out = "out.csv"
//! tol = 1e-6
//! jobs = 4
//! T_lo = 0.01
//! T_hi = 20.0
//! scan_points = 64
//!
//! [window]
//! certificate = "half-half"
//! witness = "even-odd"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analysis::{self, ThresholdOptions};
use crate::lattice::{ModelKind, ModelSpec, Topology};
use crate::partitions::Family;

/// Configuration problem, reported with the offending field.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

impl ConfigError {
    fn field(field: &str, msg: impl std::fmt::Display) -> Self {
        Self(format!("{field}: {msg}"))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: ModelKind,
    pub topology: Topology,
    pub n: Option<usize>,
    pub n_list: Option<Vec<usize>>,
    pub c: Option<f64>,
    pub h: Option<f64>,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    pub T_list: Option<Vec<f64>>,
    pub beta_list: Option<Vec<f64>>,
    pub T_range: Option<[f64; 2]>,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionsSection {
    #[serde(default)]
    pub families: Vec<String>,
    pub blocks_nb: Option<Vec<u32>>,
    pub external_sites: Option<Vec<usize>>,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub jobs: Option<usize>,
    pub T_lo: Option<f64>,
    pub T_hi: Option<f64>,
    pub scan_points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    pub certificate: Option<String>,
    pub witness: Option<String>,
}

/// Raw experiment config as read from disk.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSection,
    #[serde(default)]
    pub schedule: ScheduleSection,
    #[serde(default)]
    pub partitions: PartitionsSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub window: WindowSection,
}

impl ExperimentConfig {
    /// Parses TOML text, applying `section.key=value` overrides on top.
    pub fn parse(text: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        if overrides.is_empty() {
            return toml::from_str(text).map_err(|e| ConfigError(e.to_string()));
        }
        let mut table: toml::Table = toml::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        table.try_into().map_err(|e: toml::de::Error| ConfigError(e.to_string()))
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, overrides).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))
    }

    /// One model per requested size.
    pub fn models(&self) -> Result<Vec<ModelSpec>, ConfigError> {
        let m = &self.model;
        let sizes = match (m.n, &m.n_list) {
            (Some(n), None) => vec![n],
            (None, Some(list)) if !list.is_empty() => list.clone(),
            (None, Some(_)) => return Err(ConfigError::field("model.n_list", "must not be empty")),
            (Some(_), Some(_)) => return Err(ConfigError::field("model", "give either n or n_list, not both")),
            (None, None) => return Err(ConfigError::field("model", "missing n or n_list")),
        };
        let base = match m.kind {
            ModelKind::Harmonic => {
                if m.h.is_some_and(|h| h != 0.0) {
                    return Err(ConfigError::field("model.h", "field is not used by harmonic models"));
                }
                let c = m.c.ok_or_else(|| ConfigError::field("model.c", "required for harmonic models"))?;
                ModelSpec::harmonic(m.topology, 0, c)
            }
            ModelKind::SpinHalf => {
                if m.c.is_some_and(|c| c != 1.0) {
                    return Err(ConfigError::field("model.c", "spin models have unit coupling"));
                }
                ModelSpec::spin(m.topology, 0, m.h.unwrap_or(0.0))
            }
        };
        sizes
            .into_iter()
            .map(|n| {
                let spec = base.with_sites(n);
                spec.validate().map_err(|e| ConfigError::field("model", e))?;
                Ok(spec)
            })
            .collect()
    }

    /// Temperatures of the schedule, in file order.
    pub fn temperatures(&self) -> Result<Vec<f64>, ConfigError> {
        let s = &self.schedule;
        let given = [s.T_list.is_some(), s.beta_list.is_some(), s.T_range.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if given != 1 {
            return Err(ConfigError::field(
                "schedule",
                format!("exactly one of T_list, beta_list, T_range is required, found {given}"),
            ));
        }
        if s.count.is_some() && s.T_range.is_none() {
            return Err(ConfigError::field("schedule.count", "only valid together with T_range"));
        }
        let temps = if let Some(list) = &s.T_list {
            list.clone()
        } else if let Some(list) = &s.beta_list {
            list.iter()
                .map(|&b| analysis::temperature_of(b).map_err(|e| ConfigError::field("schedule.beta_list", e)))
                .collect::<Result<_, _>>()?
        } else {
            let [lo, hi] = s.T_range.expect("checked above");
            let count = s.count.ok_or_else(|| ConfigError::field("schedule.count", "required with T_range"))?;
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(ConfigError::field("schedule.T_range", format!("need lo <= hi, got [{lo}, {hi}]")));
            }
            match count {
                0 => Vec::new(),
                1 => vec![lo],
                _ => (0..count)
                    .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                    .collect(),
            }
        };
        if let Some(bad) = temps.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(ConfigError::field("schedule", format!("temperature {bad} is not a finite non-negative number")));
        }
        Ok(temps)
    }

    /// Partition families, with their parameters attached.
    pub fn families(&self) -> Result<Vec<Family>, ConfigError> {
        let p = &self.partitions;
        if p.families.is_empty() {
            return Err(ConfigError::field("partitions.families", "at least one family is required"));
        }
        p.families.iter().map(|name| self.family(name, "partitions.families")).collect()
    }

    fn family(&self, name: &str, field: &str) -> Result<Family, ConfigError> {
        let p = &self.partitions;
        Ok(match Family::parse(name).map_err(|e| ConfigError::field(field, e))? {
            Family::Blocks(_) => Family::Blocks(p.blocks_nb.clone()),
            Family::External(_) => Family::External(p.external_sites.clone()),
            f => f,
        })
    }

    /// Certificate and witness families of the `[window]` section.
    pub fn window_families(&self) -> Result<(Family, Family), ConfigError> {
        let w = &self.window;
        let cert = w
            .certificate
            .as_deref()
            .ok_or_else(|| ConfigError::field("window.certificate", "required"))?;
        let wit = w
            .witness
            .as_deref()
            .ok_or_else(|| ConfigError::field("window.witness", "required"))?;
        Ok((self.family(cert, "window.certificate")?, self.family(wit, "window.witness")?))
    }

    pub fn threshold_options(&self) -> Result<ThresholdOptions, ConfigError> {
        let r = &self.run;
        let d = ThresholdOptions::default();
        let opts = ThresholdOptions {
            t_lo: r.T_lo.unwrap_or(d.t_lo),
            t_hi: r.T_hi.unwrap_or(d.t_hi),
            tol: r.tol.unwrap_or(d.tol),
            scan_points: r.scan_points.unwrap_or(d.scan_points),
        };
        if !(opts.tol > 0.0) {
            return Err(ConfigError::field("run.tol", format!("must be positive, got {}", opts.tol)));
        }
        if !(opts.t_lo > 0.0 && opts.t_hi > opts.t_lo) {
            return Err(ConfigError::field(
                "run.T_lo",
                format!("need 0 < T_lo < T_hi, got T_lo = {}, T_hi = {}", opts.t_lo, opts.t_hi),
            ));
        }
        if opts.scan_points < 2 {
            return Err(ConfigError::field("run.scan_points", "need at least 2"));
        }
        Ok(opts)
    }
}

/// Sets `section.key` to a TOML value; bare words are taken as strings.
fn apply_override(table: &mut toml::Table, assignment: &str) -> Result<(), ConfigError> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| ConfigError(format!("override {assignment:?} is not of the form section.key=value")))?;
    let (section, key) = path
        .trim()
        .split_once('.')
        .ok_or_else(|| ConfigError(format!("override key {path:?} is not of the form section.key")))?;
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    let entry = table
        .entry(section.to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    let sect = entry
        .as_table_mut()
        .ok_or_else(|| ConfigError(format!("{section} is not a section")))?;
    sect.insert(key.to_string(), value);
    Ok(())
}
