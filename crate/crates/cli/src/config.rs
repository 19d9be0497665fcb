//! TOML experiment files.
//!
//! Powers may be given linearly (`alpha`) or in decibels (`alpha_db`), never
//! both. Decibel keys are converted on load, so an [`ExperimentConfig`] holds
//! linear values only and dumps back to linear keys.

use std::path::{Path, PathBuf};

use an_wiretap::sweep::SweepParameter;
use an_wiretap::{NoAnModel, QuadratureSpec, SimulationMode, SystemConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub system: SystemConfig,
    pub mode: SimulationMode,
    pub no_an_model: NoAnModel,
    pub sweep: Sweep,
    pub trials: u64,
    pub seed: u64,
    pub workers: Option<usize>,
    pub quadrature: QuadratureSpec,
    pub outputs: Outputs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outputs {
    pub csv_path: PathBuf,
    pub include_mc: bool,
    pub include_analytic: bool,
    pub include_approx: bool,
    pub include_asymptotic: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    no_an_model: Option<String>,
    trials: u64,
    seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    workers: Option<usize>,
    system: RawSystem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<RawSweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quadrature: Option<RawQuadrature>,
    outputs: RawOutputs,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n_a: u32,
    n_b: u32,
    n_e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma_db: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values_db: Option<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadrature {
    #[serde(default = "default_nodes")]
    nodes_per_dim: usize,
    #[serde(default = "default_tolerance")]
    refinement_tolerance: f64,
}

fn default_nodes() -> usize {
    QuadratureSpec::default().nodes_per_dim
}

fn default_tolerance() -> f64 {
    QuadratureSpec::default().refinement_tolerance
}

fn yes() -> bool {
    true
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutputs {
    csv_path: PathBuf,
    #[serde(default = "yes")]
    include_mc: bool,
    #[serde(default = "yes")]
    include_analytic: bool,
    #[serde(default)]
    include_approx: bool,
    #[serde(default)]
    include_asymptotic: bool,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn pick(key: &str, linear: Option<f64>, db: Option<f64>, default: Option<f64>) -> Result<f64> {
    let v = match (linear, db) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config(format!("system.{key}: set either `{key}` or `{key}_db`, not both")))
        }
        (Some(v), None) => v,
        (None, Some(d)) => db_to_linear(d),
        (None, None) => {
            default.ok_or_else(|| CliError::Config(format!("system.{key}: missing (give `{key}` or `{key}_db`)")))?
        }
    };
    if !v.is_finite() {
        return Err(CliError::Config(format!("system.{key}: must be finite, got {v}")));
    }
    Ok(v)
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawConfig) -> Result<Self> {
        let mode: SimulationMode = raw.mode.parse().map_err(|e| CliError::Config(format!("mode: {e}")))?;
        let no_an_model = match &raw.no_an_model {
            Some(s) => s.parse().map_err(|e| CliError::Config(format!("no_an_model: {e}")))?,
            None => NoAnModel::default(),
        };
        let s = &raw.system;
        let system = SystemConfig {
            n_a: s.n_a,
            n_b: s.n_b,
            n_e: s.n_e,
            alpha: pick("alpha", s.alpha, s.alpha_db, None)?,
            beta: pick("beta", s.beta, s.beta_db, Some(1.0))?,
            gamma: pick("gamma", s.gamma, s.gamma_db, Some(1.0))?,
        };
        system.validate().map_err(|e| CliError::Config(format!("system: {}", bare(e))))?;

        let sweep = match raw.sweep {
            None => Sweep { parameter: SweepParameter::NE, values: vec![system.n_e as f64] },
            Some(sw) => {
                let parameter: SweepParameter =
                    sw.parameter.parse().map_err(|e| CliError::Config(format!("sweep.parameter: {}", bare(e))))?;
                let values = match (sw.values, sw.values_db) {
                    (Some(v), None) => v,
                    (None, Some(d)) => {
                        if matches!(parameter, SweepParameter::NE | SweepParameter::NB) {
                            return Err(CliError::Config(format!(
                                "sweep.values_db: antenna counts cannot be given in dB (parameter {parameter})"
                            )));
                        }
                        d.into_iter().map(db_to_linear).collect()
                    }
                    _ => return Err(CliError::Config("sweep: set exactly one of `values` or `values_db`".into())),
                };
                for (i, &v) in values.iter().enumerate() {
                    parameter
                        .apply(&system, v)
                        .map_err(|e| CliError::Config(format!("sweep.values[{i}] = {v}: {}", bare(e))))?;
                }
                Sweep { parameter, values }
            }
        };

        if raw.trials < 2 && raw.outputs.include_mc {
            return Err(CliError::Config(format!("trials: must be >= 2 when include_mc is set, got {}", raw.trials)));
        }
        if raw.workers == Some(0) {
            return Err(CliError::Config("workers: must be >= 1".into()));
        }
        let quadrature = match raw.quadrature {
            Some(q) => QuadratureSpec { nodes_per_dim: q.nodes_per_dim, refinement_tolerance: q.refinement_tolerance },
            None => QuadratureSpec::default(),
        };
        quadrature.validate().map_err(|e| CliError::Config(format!("quadrature: {}", bare(e))))?;

        let o = raw.outputs;
        Ok(Self {
            system,
            mode,
            no_an_model,
            sweep,
            trials: raw.trials,
            seed: raw.seed,
            workers: raw.workers,
            quadrature,
            outputs: Outputs {
                csv_path: o.csv_path,
                include_mc: o.include_mc,
                include_analytic: o.include_analytic,
                include_approx: o.include_approx,
                include_asymptotic: o.include_asymptotic,
            },
        })
    }

    /// Canonical TOML with linear keys; parses back to an equal value.
    pub fn to_toml(&self) -> String {
        let s = &self.system;
        let raw = RawConfig {
            mode: self.mode.name().to_owned(),
            no_an_model: Some(self.no_an_model.name().to_owned()),
            trials: self.trials,
            seed: self.seed,
            workers: self.workers,
            system: RawSystem {
                n_a: s.n_a,
                n_b: s.n_b,
                n_e: s.n_e,
                alpha: Some(s.alpha),
                alpha_db: None,
                beta: Some(s.beta),
                beta_db: None,
                gamma: Some(s.gamma),
                gamma_db: None,
            },
            sweep: Some(RawSweep {
                parameter: self.sweep.parameter.name().to_owned(),
                values: Some(self.sweep.values.clone()),
                values_db: None,
            }),
            quadrature: Some(RawQuadrature {
                nodes_per_dim: self.quadrature.nodes_per_dim,
                refinement_tolerance: self.quadrature.refinement_tolerance,
            }),
            outputs: RawOutputs {
                csv_path: self.outputs.csv_path.clone(),
                include_mc: self.outputs.include_mc,
                include_analytic: self.outputs.include_analytic,
                include_approx: self.outputs.include_approx,
                include_asymptotic: self.outputs.include_asymptotic,
            },
        };
        toml::to_string_pretty(&raw).expect("experiment config is always representable in TOML")
    }
}

/// The message of a library error without its category prefix.
fn bare(e: an_wiretap::Error) -> String {
    match e {
        an_wiretap::Error::InvalidConfig(m) => m,
        other => other.to_string(),
    }
}
