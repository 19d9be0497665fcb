//! Finite-antenna analytic average rates.

use crate::asymptotics::phi;
use crate::capacity::rayleigh_capacity;
use crate::error::{domain, Result};
pub use crate::quadrature::QuadratureSpec;
use crate::quadrature::{adaptive_legendre, laguerre};
use crate::randmat::{mean_min_eig_with, wishart_min_eig_pdf_scaled};
use crate::specfun::exp_integral_scaled;
use crate::wiretap::{secrecy_rate, NoAnModel, Regime, SystemConfig};

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// f(t, r, x) = E log2 det(I_r + (x/t) H H^H), H of shape r × t with CN(0,1) entries.
pub fn ergodic_capacity_f(t: u32, r: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain(format!("f(t, r, x) needs x >= 0, got {x}")));
    }
    if t == 0 || r == 0 {
        return Err(domain(format!("f(t, r, x) needs t, r >= 1, got ({t}, {r})")));
    }
    rayleigh_capacity(t as usize, r as usize, x / t as f64)
}

/// Averaged Bob and Eve rates, before the secrecy clamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageRates {
    pub bob: f64,
    pub eve: f64,
}

impl AverageRates {
    pub fn secrecy(&self) -> f64 {
        secrecy_rate(self.bob, self.eve)
    }
}

/// C̄_b = f(N_a, N_b, αγN_a).
pub fn avg_capacity_bob(cfg: &SystemConfig) -> Result<f64> {
    cfg.validate()?;
    ergodic_capacity_f(cfg.n_a, cfg.n_b, cfg.alpha * cfg.gamma * cfg.n_a as f64)
}

pub fn avg_rates_an(cfg: &SystemConfig, quad: &QuadratureSpec) -> Result<AverageRates> {
    let bob = avg_capacity_bob(cfg)?;
    let eve = match cfg.regime() {
        Regime::CompleteElimination => {
            let dof = cfg.n_e + cfg.n_b - cfg.n_a;
            ergodic_capacity_f(cfg.n_b, dof, cfg.alpha * cfg.n_b as f64)?
        }
        Regime::Residual => avg_eve_rate_residual(cfg, quad)?,
    };
    Ok(AverageRates { bob, eve })
}

/// Average secrecy rate with artificial noise, regime dispatched by the configuration.
pub fn avg_secrecy_rate_an(cfg: &SystemConfig, quad: &QuadratureSpec) -> Result<f64> {
    Ok(avg_rates_an(cfg, quad)?.secrecy())
}

/// E log2(1 + c·A) for 2A ~ χ²(2n): log2(e) Σ_{p=1}^{n} e^z E_p(z), z = 1/c.
pub fn mean_log_gain(n: u32, c: f64) -> Result<f64> {
    if c == 0.0 {
        return Ok(0.0);
    }
    let z = 1.0 / c;
    let mut s = 0.0;
    for p in 1..=n {
        s += exp_integral_scaled(p, z)?;
    }
    Ok(LOG2_E * s)
}

/// Eve's average rate in the residual regime,
/// ∬ log2(1 + αa/(αβb + 1)) f_A(a) f_B(b) da db.
///
/// The inner integral over A is done in closed form ([`mean_log_gain`]); the
/// outer one, after b = u/N_e, splits into an adaptive Gauss–Legendre part near
/// the origin, where the integrand has a nearby logarithmic singularity at
/// b = −1/(αβ), and a Gauss–Laguerre tail.
pub fn avg_eve_rate_residual(cfg: &SystemConfig, quad: &QuadratureSpec) -> Result<f64> {
    cfg.validate()?;
    if cfg.regime() != Regime::Residual {
        return Err(crate::Error::RegimeMismatch("residual Eve rate requested with n_e > n_a - n_b".into()));
    }
    quad.validate()?;
    let (na, nb, ne) = (cfg.n_a, cfg.n_b, cfg.n_e);
    let m = ne as f64;
    let integrand = |u: f64| -> Result<f64> {
        let b = u / m;
        let c = cfg.alpha / (cfg.alpha * cfg.beta * b + 1.0);
        Ok(wishart_min_eig_pdf_scaled(b, na, nb, ne)? / m * mean_log_gain(nb, c)?)
    };
    const SPLIT: f64 = 1.0;
    let head =
        adaptive_legendre(0.0, SPLIT, quad.refinement_tolerance * 1e-3, "residual Eve rate near zero", &mut |u| {
            Ok((-u).exp() * integrand(u)?)
        })?;
    let tail = laguerre(quad, 0.0, "residual Eve rate tail", |v| integrand(SPLIT + v))? * (-SPLIT).exp();
    Ok(head + tail)
}

pub fn avg_rates_no_an(cfg: &SystemConfig, model: NoAnModel) -> Result<AverageRates> {
    cfg.validate()?;
    let eta = cfg.eta();
    let bob = ergodic_capacity_f(cfg.n_a, cfg.n_b, eta)?;
    let eve = match model {
        NoAnModel::FullArray => ergodic_capacity_f(cfg.n_a, cfg.n_e, eta / cfg.gamma)?,
        NoAnModel::Precoded => {
            ergodic_capacity_f(cfg.n_b, cfg.n_e, eta * cfg.n_b as f64 / (cfg.gamma * cfg.n_a as f64))?
        }
    };
    Ok(AverageRates { bob, eve })
}

/// Average secrecy rate without artificial noise under the default model.
pub fn avg_secrecy_rate_no_an(cfg: &SystemConfig) -> Result<f64> {
    avg_secrecy_rate_no_an_with(cfg, NoAnModel::default())
}

pub fn avg_secrecy_rate_no_an_with(cfg: &SystemConfig, model: NoAnModel) -> Result<f64> {
    Ok(avg_rates_no_an(cfg, model)?.secrecy())
}

/// Large-system approximation of the AN secrecy rate.
pub fn approx_secrecy_rate_an(cfg: &SystemConfig) -> Result<f64> {
    approx_secrecy_rate_an_with(cfg, &QuadratureSpec::default())
}

pub fn approx_secrecy_rate_an_with(cfg: &SystemConfig, quad: &QuadratureSpec) -> Result<f64> {
    cfg.validate()?;
    let nb = cfg.n_b as f64;
    let bob = nb * phi(cfg.alpha * cfg.gamma * nb, cfg.n_a as f64 / nb);
    let eve = match cfg.regime() {
        Regime::CompleteElimination => nb * phi(cfg.alpha * nb, (cfg.n_e + cfg.n_b - cfg.n_a) as f64 / nb),
        Regime::Residual => {
            let mu = mean_min_eig_with(cfg.n_a, cfg.n_b, cfg.n_e, quad)?;
            (cfg.alpha * nb / (cfg.alpha * cfg.beta * mu + 1.0)).ln_1p() * LOG2_E
        }
    };
    Ok(secrecy_rate(bob, eve))
}

/// Large-system approximation of the no-AN secrecy rate under the default model.
pub fn approx_secrecy_rate_no_an(cfg: &SystemConfig) -> Result<f64> {
    approx_secrecy_rate_no_an_with(cfg, NoAnModel::default())
}

pub fn approx_secrecy_rate_no_an_with(cfg: &SystemConfig, model: NoAnModel) -> Result<f64> {
    cfg.validate()?;
    let (na, nb, ne) = (cfg.n_a as f64, cfg.n_b as f64, cfg.n_e as f64);
    let eta = cfg.eta();
    let bob = nb * phi(eta * nb / na, na / nb);
    let eve_cols = match model {
        NoAnModel::FullArray => na,
        NoAnModel::Precoded => nb,
    };
    let eve = ne * phi(eta * ne / (cfg.gamma * na), eve_cols / ne);
    Ok(secrecy_rate(bob, eve))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_edge_cases() {
        assert_eq!(ergodic_capacity_f(4, 3, 0.0).unwrap(), 0.0);
        assert!(ergodic_capacity_f(4, 3, -1.0).is_err());
        let x: f64 = 5.0;
        let want = LOG2_E * (1.0 / x).exp() * crate::specfun::exp_integral(1, 1.0 / x).unwrap();
        assert!((ergodic_capacity_f(1, 1, x).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn mean_log_gain_single_dof() {
        let c: f64 = 3.0;
        let want = LOG2_E * (1.0f64 / c).exp() * crate::specfun::exp_integral(1, 1.0 / c).unwrap();
        assert!((mean_log_gain(1, c).unwrap() - want).abs() < 1e-14);
        assert_eq!(mean_log_gain(4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn no_an_baseline_vanishes_at_equal_arrays() {
        let c = SystemConfig::new(16, 8, 8, 2.0, 1.0, 1.0).unwrap();
        assert!(approx_secrecy_rate_no_an(&c).unwrap() < 1e-12);
    }

    #[test]
    fn approximations_vanish_at_low_snr() {
        let c = SystemConfig::new(32, 16, 12, 1e-12, 1.0, 1.0).unwrap();
        assert!(approx_secrecy_rate_an(&c).unwrap() < 1e-9);
        assert!(approx_secrecy_rate_no_an(&c).unwrap() < 1e-9);
    }
}
