//! One-parameter sweeps evaluated by a chosen set of rate models.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::models::{ModelRegistry, ModelSettings, RateEvaluation};
use crate::montecarlo::SimulationMode;
use crate::wiretap::SystemConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    NE,
    NB,
    Alpha,
    Beta,
    Gamma,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::NE => "n_e",
            SweepParameter::NB => "n_b",
            SweepParameter::Alpha => "alpha",
            SweepParameter::Beta => "beta",
            SweepParameter::Gamma => "gamma",
        }
    }

    /// The template with this parameter replaced, validated.
    pub fn apply(&self, template: &SystemConfig, value: f64) -> Result<SystemConfig> {
        let mut cfg = *template;
        let count = |v: f64| -> Result<u32> {
            if v.fract() != 0.0 || !(1.0..=4096.0).contains(&v) {
                return Err(Error::InvalidConfig(format!("{} must be a positive integer, got {v}", self.name())));
            }
            Ok(v as u32)
        };
        match self {
            SweepParameter::NE => cfg.n_e = count(value)?,
            SweepParameter::NB => cfg.n_b = count(value)?,
            SweepParameter::Alpha => cfg.alpha = value,
            SweepParameter::Beta => cfg.beta = value,
            SweepParameter::Gamma => cfg.gamma = value,
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "n_e" => SweepParameter::NE,
            "n_b" => SweepParameter::NB,
            "alpha" => SweepParameter::Alpha,
            "beta" => SweepParameter::Beta,
            "gamma" => SweepParameter::Gamma,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unknown sweep parameter {s:?} (expected n_e, n_b, alpha, beta or gamma)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    /// One entry per requested model, in request order.
    pub results: Vec<(&'static str, std::result::Result<RateEvaluation, Error>)>,
}

impl SweepRow {
    pub fn get(&self, model: &str) -> Option<&std::result::Result<RateEvaluation, Error>> {
        self.results.iter().find(|(n, _)| *n == model).map(|(_, r)| r)
    }

    pub fn first_error(&self) -> Option<&Error> {
        self.results.iter().find_map(|(_, r)| r.as_ref().err())
    }
}

/// Evaluate every model at every value. A failure is kept in its row.
pub fn sweep(
    template: &SystemConfig,
    parameter: SweepParameter,
    values: &[f64],
    mode: SimulationMode,
    registry: &ModelRegistry,
    models: &[&str],
) -> Result<Vec<SweepRow>> {
    let chosen: Vec<_> = models.iter().map(|m| registry.get(m)).collect::<Result<_>>()?;
    Ok(values
        .iter()
        .map(|&value| {
            let cfg = parameter.apply(template, value);
            let results = chosen
                .iter()
                .map(|m| (m.name(), cfg.as_ref().map_err(Clone::clone).and_then(|c| m.evaluate(c, mode))))
                .collect();
            SweepRow { value, results }
        })
        .collect())
}

/// Monte Carlo, analytic and approximation columns with default settings.
pub fn sweep_standard(
    template: &SystemConfig,
    parameter: SweepParameter,
    values: &[f64],
    mode: SimulationMode,
    trials: u64,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let registry = ModelRegistry::standard(ModelSettings { trials, seed, ..Default::default() });
    sweep(template, parameter, values, mode, &registry, &["mc", "analytic", "approx"])
}
