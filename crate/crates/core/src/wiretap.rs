//! System model: configuration, AN precoder, ANE projector and per-realization rates.

use std::fmt;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::randmat::{log2det_gram, min_eigenpair, sample_complex_gaussian, svd, CMatrix, RngStream, C64};

/// Antenna counts and power ratios. Noise power at Bob is normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub n_a: u32,
    pub n_b: u32,
    pub n_e: u32,
    /// σ_s²/σ_n², Eve's signal-to-noise ratio (linear).
    pub alpha: f64,
    /// σ_r²/σ_s², artificial noise to signal power ratio.
    pub beta: f64,
    /// σ_n²/σ_u², Eve's noise power relative to Bob's.
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// n_e > n_a − n_b: Eve can null the artificial noise completely.
    CompleteElimination,
    /// n_e ≤ n_a − n_b: the minimum-eigenvalue leakage remains.
    Residual,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::CompleteElimination => "complete elimination",
            Regime::Residual => "residual",
        })
    }
}

impl SystemConfig {
    pub fn new(n_a: u32, n_b: u32, n_e: u32, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let cfg = Self { n_a, n_b, n_e, alpha, beta, gamma };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_b < 1 {
            return bad(format!("n_b must be >= 1, got {}", self.n_b));
        }
        if self.n_a <= self.n_b {
            return bad(format!(
                "invariant N_a > N_b violated (n_a = {}, n_b = {}): artificial noise needs a nonempty null space",
                self.n_a, self.n_b
            ));
        }
        if self.n_e < 1 {
            return bad(format!("n_e must be >= 1, got {}", self.n_e));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be finite and > 0, got {}", self.alpha));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return bad(format!("beta must be finite and >= 0, got {}", self.beta));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be finite and > 0, got {}", self.gamma));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.n_e > self.n_a - self.n_b {
            Regime::CompleteElimination
        } else {
            Regime::Residual
        }
    }

    /// Equivalent SNR when the artificial-noise power is given to the signal.
    pub fn eta(&self) -> f64 {
        let (na, nb) = (self.n_a as f64, self.n_b as f64);
        self.alpha * self.gamma * na * (1.0 + self.beta * (na - nb) / nb)
    }

    /// Total power of the information-bearing signal, P_s.
    pub fn signal_power(&self) -> f64 {
        self.alpha * self.gamma * self.n_b as f64
    }

    /// Total artificial-noise power, P_r.
    pub fn noise_power(&self) -> f64 {
        self.alpha * self.beta * self.gamma * (self.n_a - self.n_b) as f64
    }
}

/// One draw of Bob's channel H (n_b × n_a) and Eve's channel G (n_e × n_a).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h: CMatrix,
    pub g: CMatrix,
}

impl ChannelRealization {
    pub fn new(h: CMatrix, g: CMatrix, cfg: &SystemConfig) -> Result<Self> {
        check_shape("H", &h, cfg.n_b, cfg.n_a)?;
        check_shape("G", &g, cfg.n_e, cfg.n_a)?;
        Ok(Self { h, g })
    }

    /// H then G, both from the same stream.
    pub fn sample(cfg: &SystemConfig, stream: RngStream) -> Result<Self> {
        let mut rng = stream.rng();
        let h = sample_complex_gaussian(cfg.n_b as usize, cfg.n_a as usize, &mut rng)?;
        let g = sample_complex_gaussian(cfg.n_e as usize, cfg.n_a as usize, &mut rng)?;
        Ok(Self { h, g })
    }
}

fn check_shape(name: &str, m: &CMatrix, rows: u32, cols: u32) -> Result<()> {
    if m.shape() != (rows as usize, cols as usize) {
        return Err(Error::Dimension(format!("{name} is {}x{}, expected {rows}x{cols}", m.nrows(), m.ncols())));
    }
    Ok(())
}

/// Right singular subspaces of H: V1 carries the signal, V0 the artificial noise.
#[derive(Debug, Clone)]
pub struct AnPrecoder {
    pub v1: CMatrix,
    pub v0: CMatrix,
    pub singular_values: Vec<f64>,
}

pub fn build_precoder(h: &CMatrix, cfg: &SystemConfig) -> Result<AnPrecoder> {
    check_shape("H", h, cfg.n_b, cfg.n_a)?;
    let s = svd(h)?;
    let nb = cfg.n_b as usize;
    let na = cfg.n_a as usize;
    Ok(AnPrecoder {
        v1: s.v.columns(0, nb).into_owned(),
        v0: s.v.columns(nb, na - nb).into_owned(),
        singular_values: s.singular_values.iter().copied().collect(),
    })
}

/// Eve's projection minimizing the received artificial-noise power.
#[derive(Debug, Clone)]
pub enum AneProjector {
    /// W, (n_e − n_a + n_b) × n_e with orthonormal rows, W G V0 = 0.
    CompleteElimination { w: CMatrix },
    /// Unit vector w along the smallest eigenvalue B of G V0 V0^H G^H.
    Residual { w: DVector<C64>, lambda_min_sq: f64 },
}

impl AneProjector {
    pub fn regime(&self) -> Regime {
        match self {
            AneProjector::CompleteElimination { .. } => Regime::CompleteElimination,
            AneProjector::Residual { .. } => Regime::Residual,
        }
    }
}

pub fn build_ane_projector(g: &CMatrix, precoder: &AnPrecoder, cfg: &SystemConfig) -> Result<AneProjector> {
    check_shape("G", g, cfg.n_e, cfg.n_a)?;
    check_shape("V0", &precoder.v0, cfg.n_a, cfg.n_a - cfg.n_b)?;
    let gv0 = g * &precoder.v0;
    match cfg.regime() {
        Regime::CompleteElimination => {
            // Left null space of G V0: trailing left singular vectors.
            let k = (cfg.n_a - cfg.n_b) as usize;
            let s = svd(&gv0)?;
            let ne = cfg.n_e as usize;
            Ok(AneProjector::CompleteElimination { w: s.u.columns(k, ne - k).adjoint() })
        }
        Regime::Residual => {
            let (lambda, w) = min_eigenpair(&(&gv0 * gv0.adjoint()))?;
            Ok(AneProjector::Residual { w, lambda_min_sq: lambda })
        }
    }
}

/// log2 det(I + αγ H H^H), Bob's rate with the AN precoder.
pub fn rate_bob_an(h: &CMatrix, precoder: &AnPrecoder, cfg: &SystemConfig) -> Result<f64> {
    check_shape("H", h, cfg.n_b, cfg.n_a)?;
    log2det_gram(&(h * &precoder.v1), cfg.alpha * cfg.gamma)
}

/// Eve's rate after her optimal projection.
pub fn rate_eve_an_ane(
    g: &CMatrix,
    precoder: &AnPrecoder,
    projector: &AneProjector,
    cfg: &SystemConfig,
) -> Result<f64> {
    check_shape("G", g, cfg.n_e, cfg.n_a)?;
    if projector.regime() != cfg.regime() {
        return Err(Error::RegimeMismatch(format!(
            "projector built for the {} regime, configuration is in the {} regime",
            projector.regime(),
            cfg.regime()
        )));
    }
    let gv1 = g * &precoder.v1;
    match projector {
        AneProjector::CompleteElimination { w } => log2det_gram(&(w * gv1), cfg.alpha),
        AneProjector::Residual { w, lambda_min_sq } => {
            let g_eq = gv1.adjoint() * w;
            let gain = g_eq.norm_squared();
            let sinr = cfg.alpha * gain / (cfg.alpha * cfg.beta * lambda_min_sq + 1.0);
            Ok(sinr.ln_1p() * std::f64::consts::LOG2_E)
        }
    }
}

/// How Alice transmits in the baseline without artificial noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NoAnModel {
    /// Isotropic input over all n_a antennas: Eve sees the full G.
    #[default]
    FullArray,
    /// Input confined to V1: Eve sees G V1, of rank at most n_b.
    Precoded,
}

impl NoAnModel {
    pub fn name(&self) -> &'static str {
        match self {
            NoAnModel::FullArray => "full_array",
            NoAnModel::Precoded => "precoded",
        }
    }
}

impl std::str::FromStr for NoAnModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full_array" => Ok(NoAnModel::FullArray),
            "precoded" => Ok(NoAnModel::Precoded),
            _ => Err(Error::InvalidConfig(format!(
                "unknown no-AN model {s:?} (expected \"full_array\" or \"precoded\")"
            ))),
        }
    }
}

/// (Bob, Eve) rates without artificial noise under the default model.
pub fn rates_no_an(h: &CMatrix, g: &CMatrix, precoder: &AnPrecoder, cfg: &SystemConfig) -> Result<(f64, f64)> {
    rates_no_an_with(h, g, precoder, cfg, NoAnModel::default())
}

pub fn rates_no_an_with(
    h: &CMatrix,
    g: &CMatrix,
    precoder: &AnPrecoder,
    cfg: &SystemConfig,
    model: NoAnModel,
) -> Result<(f64, f64)> {
    check_shape("H", h, cfg.n_b, cfg.n_a)?;
    check_shape("G", g, cfg.n_e, cfg.n_a)?;
    let s = cfg.eta() / cfg.n_a as f64;
    let bob = log2det_gram(h, s)?;
    let eve = match model {
        NoAnModel::FullArray => log2det_gram(g, s / cfg.gamma)?,
        NoAnModel::Precoded => log2det_gram(&(g * &precoder.v1), s / cfg.gamma)?,
    };
    Ok((bob, eve))
}

/// [R_b − R_e]^+.
pub fn secrecy_rate(r_bob: f64, r_eve: f64) -> f64 {
    (r_bob - r_eve).max(0.0)
}
