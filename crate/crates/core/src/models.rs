//! Secrecy-rate evaluators behind one trait, looked up by name.

use std::collections::BTreeMap;

use crate::asymptotics::{normalized_secrecy_rate_an, normalized_secrecy_rate_no_an_with, AsymptoticRatios};
use crate::closed_form::{
    approx_secrecy_rate_an_with, approx_secrecy_rate_no_an_with, avg_rates_an, avg_rates_no_an, QuadratureSpec,
};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_with, MonteCarloEstimate, MonteCarloOptions, SimulationMode};
use crate::wiretap::{NoAnModel, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEvaluation {
    pub secrecy: f64,
    pub rate_bob: Option<f64>,
    pub rate_eve: Option<f64>,
    pub estimate: Option<MonteCarloEstimate>,
}

impl RateEvaluation {
    fn value(secrecy: f64) -> Self {
        Self { secrecy, rate_bob: None, rate_eve: None, estimate: None }
    }
}

pub trait RateModel: Send + Sync {
    fn name(&self) -> &'static str;
    fn evaluate(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<RateEvaluation>;
}

/// Shared knobs for the standard models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSettings {
    pub trials: u64,
    pub seed: u64,
    pub workers: Option<usize>,
    pub quadrature: QuadratureSpec,
    pub no_an_model: NoAnModel,
}

impl Default for ModelSettings {
    fn default() -> Self {
        Self {
            trials: 10_000,
            seed: 1,
            workers: None,
            quadrature: QuadratureSpec::default(),
            no_an_model: NoAnModel::default(),
        }
    }
}

pub struct MonteCarlo(pub ModelSettings);

impl RateModel for MonteCarlo {
    fn name(&self) -> &'static str {
        "mc"
    }

    fn evaluate(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<RateEvaluation> {
        let s = &self.0;
        let opts = MonteCarloOptions { workers: s.workers, no_an_model: s.no_an_model };
        let e = estimate_with(cfg, mode, s.trials, s.seed, &opts)?;
        Ok(RateEvaluation {
            secrecy: e.mean,
            rate_bob: Some(e.per_term_means.rate_bob),
            rate_eve: Some(e.per_term_means.rate_eve),
            estimate: Some(e),
        })
    }
}

/// Exact finite-antenna averages.
pub struct Analytic(pub ModelSettings);

impl RateModel for Analytic {
    fn name(&self) -> &'static str {
        "analytic"
    }

    fn evaluate(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<RateEvaluation> {
        let r = match mode {
            SimulationMode::AnWithAne => avg_rates_an(cfg, &self.0.quadrature)?,
            SimulationMode::NoAn => avg_rates_no_an(cfg, self.0.no_an_model)?,
        };
        Ok(RateEvaluation { secrecy: r.secrecy(), rate_bob: Some(r.bob), rate_eve: Some(r.eve), estimate: None })
    }
}

/// Deterministic-equivalent approximations at finite size.
pub struct Approximation(pub ModelSettings);

impl RateModel for Approximation {
    fn name(&self) -> &'static str {
        "approx"
    }

    fn evaluate(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<RateEvaluation> {
        Ok(RateEvaluation::value(match mode {
            SimulationMode::AnWithAne => approx_secrecy_rate_an_with(cfg, &self.0.quadrature)?,
            SimulationMode::NoAn => approx_secrecy_rate_no_an_with(cfg, self.0.no_an_model)?,
        }))
    }
}

/// N_b times the normalized large-system law at the configuration's ratios.
pub struct Asymptotic(pub ModelSettings);

impl RateModel for Asymptotic {
    fn name(&self) -> &'static str {
        "asymptotic"
    }

    fn evaluate(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<RateEvaluation> {
        cfg.validate()?;
        let r = AsymptoticRatios::from_config(cfg);
        let per_antenna = match mode {
            SimulationMode::AnWithAne => normalized_secrecy_rate_an(&r, cfg.n_b, cfg.alpha, cfg.gamma),
            SimulationMode::NoAn => {
                normalized_secrecy_rate_no_an_with(&r, cfg.n_b, cfg.alpha, cfg.beta, cfg.gamma, self.0.no_an_model)
            }
        };
        Ok(RateEvaluation::value(cfg.n_b as f64 * per_antenna))
    }
}

#[derive(Default)]
pub struct ModelRegistry {
    models: BTreeMap<&'static str, Box<dyn RateModel>>,
}

impl ModelRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// "mc", "analytic", "approx" and "asymptotic", sharing one set of settings.
    pub fn standard(settings: ModelSettings) -> Self {
        let mut r = Self::new();
        r.register(Box::new(MonteCarlo(settings)));
        r.register(Box::new(Analytic(settings)));
        r.register(Box::new(Approximation(settings)));
        r.register(Box::new(Asymptotic(settings)));
        r
    }

    pub fn register(&mut self, model: Box<dyn RateModel>) {
        self.models.insert(model.name(), model);
    }

    pub fn get(&self, name: &str) -> Result<&dyn RateModel> {
        self.models.get(name).map(|m| m.as_ref()).ok_or_else(|| {
            Error::InvalidConfig(format!(
                "unknown rate model {name:?} (known: {})",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.models.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = ModelRegistry::standard(ModelSettings::default());
        assert_eq!(r.names().collect::<Vec<_>>(), vec!["analytic", "approx", "asymptotic", "mc"]);
        assert!(r.get("analytic").is_ok());
        let err = r.get("bogus").err().unwrap().to_string();
        assert!(err.contains("bogus") && err.contains("analytic"));
    }

    #[test]
    fn models_agree_roughly_on_a_small_system() {
        let settings = ModelSettings { trials: 2000, ..Default::default() };
        let r = ModelRegistry::standard(settings);
        let cfg = SystemConfig::new(16, 8, 12, 100.0, 1.0, 1.0).unwrap();
        let analytic = r.get("analytic").unwrap().evaluate(&cfg, SimulationMode::AnWithAne).unwrap();
        let mc = r.get("mc").unwrap().evaluate(&cfg, SimulationMode::AnWithAne).unwrap();
        assert!((analytic.secrecy - mc.secrecy).abs() < 0.02 * analytic.secrecy);
        let approx = r.get("approx").unwrap().evaluate(&cfg, SimulationMode::AnWithAne).unwrap();
        assert!((approx.secrecy - analytic.secrecy).abs() < 0.1 * analytic.secrecy);
    }
}
