//! Large-system laws: 𝓕, Φ, the normalized secrecy-rate limits and the
//! zero-rate / AN-advantage predicates.

use crate::error::{Error, Result};
use crate::wiretap::{NoAnModel, SystemConfig};

const LOG2_E: f64 = std::f64::consts::LOG2_E;
const SMALL_X: f64 = 1e-8;

/// 𝓕(x, y) = (√(x(1+√y)²+1) − √(x(1−√y)²+1))².
pub fn f_script(x: f64, y: f64) -> f64 {
    let (a, b) = radicals(x, y);
    // The difference of radicals rewritten as 4x√y/(a+b) avoids cancellation.
    let d = 4.0 * x * y.sqrt() / (a + b);
    d * d
}

fn radicals(x: f64, y: f64) -> (f64, f64) {
    let s = y.sqrt();
    ((x * (1.0 + s).powi(2) + 1.0).sqrt(), (x * (1.0 - s).powi(2) + 1.0).sqrt())
}

/// Φ(x, y): per-receive-antenna limit of E log2 det(I + (x/N_r) X X^H) for an
/// N_r × yN_r matrix X of unit-variance entries.
pub fn phi(x: f64, y: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        return 0.0;
    }
    if x < SMALL_X {
        return phi_series(x, y);
    }
    phi_closed(x, y)
}

fn phi_series(x: f64, y: f64) -> f64 {
    LOG2_E * (x * y - 0.5 * x * x * y * (1.0 + y))
}

fn phi_closed(x: f64, y: f64) -> f64 {
    let (a, b) = radicals(x, y);
    let q = 4.0 * x * y / ((a + b) * (a + b)); // 𝓕/(4x)
    let f4 = x * q; // 𝓕/4
    LOG2_E * (y * (x - f4).ln_1p() + (x * y - f4).ln_1p() - q)
}

/// N_e/N_b → δ1 and N_a/N_b → δ2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRatios {
    pub delta1: f64,
    pub delta2: f64,
}

impl AsymptoticRatios {
    pub fn new(delta1: f64, delta2: f64) -> Result<Self> {
        if !(delta1 > 0.0 && delta1.is_finite()) {
            return Err(Error::InvalidConfig(format!("delta1 must be finite and > 0, got {delta1}")));
        }
        if !(delta2 > 1.0 && delta2.is_finite()) {
            return Err(Error::InvalidConfig(format!("delta2 must be finite and > 1, got {delta2}")));
        }
        Ok(Self { delta1, delta2 })
    }

    pub fn from_config(cfg: &SystemConfig) -> Self {
        let nb = cfg.n_b as f64;
        Self { delta1: cfg.n_e as f64 / nb, delta2: cfg.n_a as f64 / nb }
    }

    pub fn delta3(&self) -> f64 {
        self.delta1 - self.delta2 + 1.0
    }

    pub fn complete_elimination(&self) -> bool {
        self.delta1 > self.delta2 - 1.0
    }
}

/// Limit of R_s/N_b with artificial noise and elimination at Eve.
pub fn normalized_secrecy_rate_an(ratios: &AsymptoticRatios, n_b: u32, alpha: f64, gamma: f64) -> f64 {
    let nb = n_b as f64;
    let bob = phi(alpha * gamma * nb, ratios.delta2);
    if ratios.complete_elimination() {
        (bob - phi(alpha * nb, ratios.delta3())).max(0.0)
    } else {
        bob
    }
}

/// Limit of R_s/N_b without artificial noise.
pub fn normalized_secrecy_rate_no_an(ratios: &AsymptoticRatios, n_b: u32, alpha: f64, beta: f64, gamma: f64) -> f64 {
    normalized_secrecy_rate_no_an_with(ratios, n_b, alpha, beta, gamma, NoAnModel::default())
}

pub fn normalized_secrecy_rate_no_an_with(
    ratios: &AsymptoticRatios,
    n_b: u32,
    alpha: f64,
    beta: f64,
    gamma: f64,
    model: NoAnModel,
) -> f64 {
    let (d1, d2) = (ratios.delta1, ratios.delta2);
    let eta = alpha * gamma * d2 * n_b as f64 * (1.0 + beta * (d2 - 1.0));
    let bob = phi(eta / d2, d2);
    let eve_cols = match model {
        NoAnModel::FullArray => d2 / d1,
        NoAnModel::Precoded => 1.0 / d1,
    };
    (bob - d1 * phi(eta * d1 / (gamma * d2), eve_cols)).max(0.0)
}

/// R_s/N_b at a large finite δ1, for watching the eavesdropper take over.
pub fn normalized_rate_at_large_delta1(delta1: f64, delta2: f64, n_b: u32, alpha: f64, gamma: f64) -> Result<f64> {
    let r = AsymptoticRatios::new(delta1, delta2)?;
    Ok(normalized_secrecy_rate_an(&r, n_b, alpha, gamma))
}

/// Inequality checks on a finite configuration. No numerics inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    /// γ ≤ N_b/N_a and N_e ≥ 2N_a − N_b: the average AN secrecy rate is zero.
    pub corollary1: bool,
    /// γ ≤ 1 and N_e ≥ N_b: the average no-AN secrecy rate is zero.
    pub corollary7: bool,
    /// N_b ≤ N_e < 2N_a − N_b and N_b/N_a < γ ≤ 1: AN wins while no-AN is zero.
    pub corollary10: bool,
    /// N_e < N_b and γ > 1: premise of the small-β comparison.
    pub corollary11_premise: bool,
}

impl Predicates {
    pub fn of(cfg: &SystemConfig) -> Self {
        Self {
            corollary1: corollary1(cfg),
            corollary7: corollary7(cfg),
            corollary10: corollary10(cfg),
            corollary11_premise: cfg.n_e < cfg.n_b && cfg.gamma > 1.0,
        }
    }
}

pub fn corollary1(cfg: &SystemConfig) -> bool {
    cfg.gamma * cfg.n_a as f64 <= cfg.n_b as f64 && cfg.n_e + cfg.n_b >= 2 * cfg.n_a
}

pub fn corollary7(cfg: &SystemConfig) -> bool {
    cfg.gamma <= 1.0 && cfg.n_e >= cfg.n_b
}

pub fn corollary10(cfg: &SystemConfig) -> bool {
    cfg.n_b <= cfg.n_e
        && cfg.n_e + cfg.n_b < 2 * cfg.n_a
        && (cfg.n_b as f64) < cfg.gamma * cfg.n_a as f64
        && cfg.gamma <= 1.0
}

/// N_e < N_b, γ > 1 and β no larger than the given small-β bound.
pub fn corollary11(cfg: &SystemConfig, beta_max: f64) -> bool {
    cfg.n_e < cfg.n_b && cfg.gamma > 1.0 && cfg.beta <= beta_max
}

/// δ1 ≥ 2δ2 − 1 with γ = 1: the normalized AN secrecy rate is zero.
pub fn corollary4(ratios: &AsymptoticRatios, gamma: f64) -> bool {
    gamma == 1.0 && ratios.delta1 >= 2.0 * ratios.delta2 - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_script_edges() {
        assert_eq!(f_script(0.0, 3.0), 0.0);
        assert_eq!(f_script(5.0, 0.0), 0.0);
        assert!((f_script(7.0, 1e12) / 28.0 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn phi_zero_and_continuity() {
        assert_eq!(phi(0.0, 2.0), 0.0);
        for &y in &[0.3, 1.0, 4.0] {
            let s = phi_series(SMALL_X, y);
            let c = phi_closed(SMALL_X, y);
            assert!((s - c).abs() <= 1e-7 * c, "{s} {c}");
        }
    }

    #[test]
    fn phi_matches_direct_formula() {
        for &(x, y) in &[(3.0, 2.0), (100.0, 0.5), (10.0, 7.0)] {
            let f = f_script(x, y);
            let direct = y * (1.0 + x - f / 4.0).log2() + (1.0 + x * y - f / 4.0).log2() - LOG2_E * f / (4.0 * x);
            assert!((phi(x, y) - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn predicate_examples() {
        let c = SystemConfig::new(14, 8, 20, 100.0, 1.0, 0.5).unwrap();
        assert!(corollary1(&c));
        assert!(!corollary1(&SystemConfig { n_e: 19, ..c }));
        let c = SystemConfig::new(16, 9, 12, 4.0, 1.0, 1.0).unwrap();
        assert!(corollary10(&c));
        let c = SystemConfig::new(16, 8, 7, 4.0, 1.0, 2.0).unwrap();
        let p = Predicates::of(&c);
        assert!(!p.corollary7 && p.corollary11_premise);
        assert!(corollary11(&SystemConfig { beta: 0.01, ..c }, 0.1));
        assert!(corollary4(&AsymptoticRatios::new(3.0, 2.0).unwrap(), 1.0));
    }

    #[test]
    fn ratio_validation() {
        assert!(AsymptoticRatios::new(0.0, 2.0).is_err());
        assert!(AsymptoticRatios::new(1.0, 1.0).is_err());
    }
}
