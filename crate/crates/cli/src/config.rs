//! Run configuration: a flat TOML file, overridden field by field from the command line.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    #[serde(alias = "json")]
    JsonLike,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json-like" | "json" => Ok(OutputFormat::JsonLike),
            other => Err(CliError::InvalidConfig(format!(
                "unknown format `{other}` (expected csv or json-like)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Occupation {
    /// Boltzmann weight on the relative quantum number only.
    #[default]
    Relative,
    /// Also weight the CM ladder and report its force contribution separately.
    IncludeCm,
}

/// Every key of the TOML file. Physical quantities are in the units fixed by
/// `hbar`, `mass` and `kB`; `T_ladder` is in multiples of `T₀ = ε₀/k_B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "L")]
    pub length: f64,
    pub hbar: f64,
    pub mass: f64,
    #[serde(rename = "kB")]
    pub kb: f64,
    pub npoints: usize,
    pub n_max: u32,
    #[serde(rename = "N_max")]
    pub cm_max: u32,
    #[serde(rename = "A_ladder")]
    pub a_ladder: Vec<f64>,
    /// Barrier width in grid spacings.
    pub w_factor: f64,
    pub alpha: Vec<f64>,
    /// Power-law scale `B` for `alpha-scan`.
    #[serde(rename = "B")]
    pub b_scale: f64,
    /// Relative wavevector `k` for `alpha-scan`.
    pub k: f64,
    #[serde(rename = "T_ladder")]
    pub t_ladder: Vec<f64>,
    pub occupation: Occupation,
    pub format: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Runs are always reproducible; the key exists so the echo says so.
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            length: 2.0,
            hbar: 1.0,
            mass: 1.0,
            kb: 1.0,
            npoints: 4000,
            n_max: 3,
            cm_max: 3,
            a_ladder: vec![0.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6],
            w_factor: 1.0,
            alpha: vec![0.5, 1.0, 1.5],
            b_scale: 1.0,
            k: 2.0,
            t_ladder: vec![1e-2, 1e-1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0],
            occupation: Occupation::Relative,
            format: OutputFormat::Csv,
            out: None,
            deterministic: true,
        }
    }
}

/// Command-line values that replace the corresponding file keys when present.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub length: Option<f64>,
    pub npoints: Option<usize>,
    pub n_max: Option<u32>,
    pub cm_max: Option<u32>,
    pub a_ladder: Option<Vec<f64>>,
    pub alpha: Option<Vec<f64>>,
    pub t_ladder: Option<Vec<f64>>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::InvalidConfig(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable as TOML")
    }

    pub fn apply(mut self, o: Overrides) -> Self {
        if let Some(v) = o.length {
            self.length = v;
        }
        if let Some(v) = o.npoints {
            self.npoints = v;
        }
        if let Some(v) = o.n_max {
            self.n_max = v;
        }
        if let Some(v) = o.cm_max {
            self.cm_max = v;
        }
        if let Some(v) = o.a_ladder {
            self.a_ladder = v;
        }
        if let Some(v) = o.alpha {
            self.alpha = v;
        }
        if let Some(v) = o.t_ladder {
            self.t_ladder = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
        self
    }

    /// Checks that do not depend on the command being run.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("L", self.length),
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("kB", self.kb),
            ("w_factor", self.w_factor),
            ("B", self.b_scale),
            ("k", self.k),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::InvalidConfig(format!(
                    "`{name}` must be positive and finite, got {v}"
                )));
            }
        }
        if self.npoints < 5 {
            return Err(CliError::InvalidConfig(format!(
                "`npoints` must be at least 5, got {}",
                self.npoints
            )));
        }
        if self.a_ladder.is_empty() || self.alpha.is_empty() || self.t_ladder.is_empty() {
            return Err(CliError::InvalidConfig(
                "`A_ladder`, `alpha` and `T_ladder` must be non-empty".into(),
            ));
        }
        if !self.deterministic {
            return Err(CliError::InvalidConfig("`deterministic` cannot be turned off".into()));
        }
        Ok(())
    }

    pub fn units(&self) -> Result<hcpair::Units64, CliError> {
        Ok(hcpair::Units64::new(self.hbar, self.mass, self.kb)?)
    }

    pub fn geometry(&self) -> Result<hcpair::Geometry64, CliError> {
        Ok(hcpair::Geometry64::new(self.length)?)
    }
}

/// Worker cap from `HCPAIR_WORKERS`; unset or empty means rayon's default.
pub fn worker_cap(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(s) => match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::InvalidConfig(format!(
                "HCPAIR_WORKERS must be a positive integer, got `{s}`"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let c = RunConfig {
            out: Some(PathBuf::from("run/out.csv")),
            format: OutputFormat::JsonLike,
            ..Default::default()
        };
        let back = RunConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let c = RunConfig::from_toml("L = 3.0\nN_max = 1\nformat = \"json\"\n").unwrap();
        assert_eq!(c.length, 3.0);
        assert_eq!(c.cm_max, 1);
        assert_eq!(c.format, OutputFormat::JsonLike);
        assert_eq!(c.npoints, 4000);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_toml("Lx = 3.0").is_err());
    }

    #[test]
    fn overrides_win() {
        let c = RunConfig::default().apply(Overrides {
            length: Some(5.0),
            alpha: Some(vec![2.0]),
            ..Default::default()
        });
        assert_eq!(c.length, 5.0);
        assert_eq!(c.alpha, vec![2.0]);
        assert_eq!(c.npoints, 4000);
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            length: -1.0,
            ..Default::default()
        };
        assert_eq!(bad.validate().unwrap_err().exit_code(), 2);
        let bad = RunConfig {
            npoints: 3,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn workers() {
        assert_eq!(worker_cap(None).unwrap(), None);
        assert_eq!(worker_cap(Some("4")).unwrap(), Some(4));
        assert!(worker_cap(Some("0")).is_err());
        assert!(worker_cap(Some("many")).is_err());
    }
}
