//! Deterministic parallel Monte Carlo estimates of average rates.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::randmat::RngStream;
use crate::wiretap::{
    build_ane_projector, build_precoder, rate_bob_an, rate_eve_an_ane, rates_no_an_with, secrecy_rate,
    ChannelRealization, NoAnModel, SystemConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimulationMode {
    /// Artificial noise at Alice, optimal elimination at Eve.
    AnWithAne,
    /// All power on the information signal.
    NoAn,
}

impl SimulationMode {
    pub fn name(&self) -> &'static str {
        match self {
            SimulationMode::AnWithAne => "an_with_ane",
            SimulationMode::NoAn => "no_an",
        }
    }
}

impl fmt::Display for SimulationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SimulationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "an_with_ane" => Ok(SimulationMode::AnWithAne),
            "no_an" => Ok(SimulationMode::NoAn),
            _ => Err(Error::InvalidConfig(format!("unknown mode {s:?} (expected \"an_with_ane\" or \"no_an\")"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRates {
    pub rate_bob: f64,
    pub rate_eve: f64,
}

impl TrialRates {
    pub fn secrecy(&self) -> f64 {
        secrecy_rate(self.rate_bob, self.rate_eve)
    }
}

/// Rates of a single channel draw.
pub fn simulate_trial(
    cfg: &SystemConfig,
    mode: SimulationMode,
    model: NoAnModel,
    stream: RngStream,
) -> Result<TrialRates> {
    let ch = ChannelRealization::sample(cfg, stream)?;
    rates_for_realization(cfg, mode, model, &ch)
}

pub fn rates_for_realization(
    cfg: &SystemConfig,
    mode: SimulationMode,
    model: NoAnModel,
    ch: &ChannelRealization,
) -> Result<TrialRates> {
    let precoder = build_precoder(&ch.h, cfg)?;
    match mode {
        SimulationMode::AnWithAne => {
            let projector = build_ane_projector(&ch.g, &precoder, cfg)?;
            Ok(TrialRates {
                rate_bob: rate_bob_an(&ch.h, &precoder, cfg)?,
                rate_eve: rate_eve_an_ane(&ch.g, &precoder, &projector, cfg)?,
            })
        }
        SimulationMode::NoAn => {
            let (rate_bob, rate_eve) = rates_no_an_with(&ch.h, &ch.g, &precoder, cfg, model)?;
            Ok(TrialRates { rate_bob, rate_eve })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerTermMeans {
    pub rate_bob: f64,
    pub rate_eve: f64,
    /// Mean of the per-trial [R_b − R_e]^+.
    pub secrecy_clamped: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    /// [mean R_b − mean R_e]^+.
    pub mean: f64,
    /// Sample standard deviation of R_b − R_e over √trials.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    pub per_term_means: PerTermMeans,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MonteCarloOptions {
    /// Worker threads; `None` uses the global pool. Results do not depend on it.
    pub workers: Option<usize>,
    pub no_an_model: NoAnModel,
}

pub fn estimate(cfg: &SystemConfig, mode: SimulationMode, trials: u64, seed: u64) -> Result<MonteCarloEstimate> {
    estimate_with(cfg, mode, trials, seed, &MonteCarloOptions::default())
}

pub fn estimate_with(
    cfg: &SystemConfig,
    mode: SimulationMode,
    trials: u64,
    seed: u64,
    opts: &MonteCarloOptions,
) -> Result<MonteCarloEstimate> {
    cfg.validate()?;
    if trials < 2 {
        return Err(Error::InvalidConfig(format!("trials must be >= 2, got {trials}")));
    }
    let samples = run_trials(cfg, mode, trials, seed, opts)?;
    summarize(&samples, seed)
}

/// Per-trial rates in trial order.
pub fn run_trials(
    cfg: &SystemConfig,
    mode: SimulationMode,
    trials: u64,
    seed: u64,
    opts: &MonteCarloOptions,
) -> Result<Vec<TrialRates>> {
    let work = || -> Vec<Result<TrialRates>> {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                simulate_trial(cfg, mode, opts.no_an_model, RngStream::new(seed, t))
                    .map_err(|e| Error::Trial { trial: t, source: Box::new(e) })
            })
            .collect()
    };
    let results = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start {n} workers: {e}")))?
            .install(work),
        None => work(),
    };
    results.into_iter().collect()
}

pub fn summarize(samples: &[TrialRates], seed: u64) -> Result<MonteCarloEstimate> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InvalidConfig(format!("need at least 2 trials, got {n}")));
    }
    let nf = n as f64;
    let bob: Vec<f64> = samples.iter().map(|s| s.rate_bob).collect();
    let eve: Vec<f64> = samples.iter().map(|s| s.rate_eve).collect();
    let clamped: Vec<f64> = samples.iter().map(|s| s.secrecy()).collect();
    let mean_bob = pairwise_sum(&bob) / nf;
    let mean_eve = pairwise_sum(&eve) / nf;
    let diff_mean = mean_bob - mean_eve;
    let sq: Vec<f64> = samples.iter().map(|s| (s.rate_bob - s.rate_eve - diff_mean).powi(2)).collect();
    let var = pairwise_sum(&sq) / (nf - 1.0);
    Ok(MonteCarloEstimate {
        mean: secrecy_rate(mean_bob, mean_eve),
        std_error: (var / nf).sqrt(),
        trials: n as u64,
        seed,
        per_term_means: PerTermMeans {
            rate_bob: mean_bob,
            rate_eve: mean_eve,
            secrecy_clamped: pairwise_sum(&clamped) / nf,
        },
    })
}

/// Pairwise summation with a fixed split, so the result is independent of scheduling.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let v: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 500_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn too_few_trials() {
        let c = SystemConfig::new(4, 2, 3, 1.0, 1.0, 1.0).unwrap();
        assert!(estimate(&c, SimulationMode::AnWithAne, 1, 0).is_err());
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [SimulationMode::AnWithAne, SimulationMode::NoAn] {
            assert_eq!(m.name().parse::<SimulationMode>().unwrap(), m);
        }
        assert!("an".parse::<SimulationMode>().is_err());
    }

    #[test]
    fn clamp_order_inequality() {
        let c = SystemConfig::new(8, 4, 6, 10.0, 1.0, 1.0).unwrap();
        let e = estimate(&c, SimulationMode::AnWithAne, 200, 5).unwrap();
        assert!(e.mean >= 0.0);
        assert!(e.per_term_means.secrecy_clamped >= e.mean - 1e-12);
    }
}
