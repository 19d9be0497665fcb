//! Gauss–Laguerre with node-count escalation, and adaptive Gauss–Legendre.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;
use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes_per_dim: usize,
    pub refinement_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_per_dim: 64, refinement_tolerance: 1e-6 }
    }
}

const MAX_NODES: usize = 512;

impl QuadratureSpec {
    pub fn new(nodes_per_dim: usize, refinement_tolerance: f64) -> Result<Self> {
        let spec = Self { nodes_per_dim, refinement_tolerance };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_dim < 8 || self.nodes_per_dim > MAX_NODES {
            return Err(Error::InvalidConfig(format!(
                "quadrature.nodes_per_dim must lie in [8, {MAX_NODES}], got {}",
                self.nodes_per_dim
            )));
        }
        if !(self.refinement_tolerance > 0.0 && self.refinement_tolerance < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "quadrature.refinement_tolerance must lie in (0, 1), got {}",
                self.refinement_tolerance
            )));
        }
        Ok(())
    }
}

type Rule = Arc<Vec<(f64, f64)>>;

fn laguerre_rule(nodes: usize, alpha: f64) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (nodes, alpha.to_bits());
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let r: Rule = Arc::new(build_laguerre(nodes, alpha));
    cache.lock().unwrap().insert(key, r.clone());
    r
}

/// Generalized Gauss–Laguerre rule. Nodes start from the Golub–Welsch
/// eigenvalues and are polished by Newton steps; weights come from
/// Γ(n+α+1) / (n! x L_n'(x)²) in the log domain, so the far-tail weights
/// keep full relative accuracy instead of bottoming out at round-off.
fn build_laguerre(n: usize, alpha: f64) -> Vec<(f64, f64)> {
    let jacobi = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * i as f64 + alpha + 1.0
        } else if i.abs_diff(j) == 1 {
            let k = i.max(j) as f64;
            (k * (k + alpha)).sqrt()
        } else {
            0.0
        }
    });
    let mut guesses: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    guesses.sort_by(f64::total_cmp);
    let ln_norm = ln_gamma(n as f64 + alpha + 1.0) - ln_gamma(n as f64 + 1.0);
    guesses
        .into_iter()
        .map(|mut x| {
            for _ in 0..8 {
                let (ln, lnm1, _) = laguerre_pair(n, alpha, x);
                let deriv = (n as f64 * ln - (n as f64 + alpha) * lnm1) / x;
                let step = ln / deriv;
                x -= step;
                if step.abs() <= 4.0 * f64::EPSILON * x {
                    break;
                }
            }
            let (_, lnm1, log_scale) = laguerre_pair(n, alpha, x);
            // At a root, x L_n' = −(n+α) L_{n−1}.
            let ln_deriv = (n as f64 + alpha).ln() + lnm1.abs().ln() + log_scale - x.ln();
            (x, (ln_norm - x.ln() - 2.0 * ln_deriv).exp())
        })
        .collect()
}

// (L_n, L_{n−1}) divided by e^{log_scale}, plus log_scale.
fn laguerre_pair(n: usize, alpha: f64, x: f64) -> (f64, f64, f64) {
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    let mut log_scale = 0.0;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            prev *= 1e-150;
            cur *= 1e-150;
            log_scale += 150.0 * std::f64::consts::LN_10;
        }
    }
    (cur, prev, log_scale)
}

fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

fn legendre_rule(nodes: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&nodes) {
        return r.clone();
    }
    let rule = GaussLegendre::new(nodes.try_into().expect("nodes > 0"));
    let r: Rule = Arc::new(rule.iter().map(|(x, w)| (*x, *w)).collect());
    cache.lock().unwrap().insert(nodes, r.clone());
    r
}

fn apply(rule: &[(f64, f64)], f: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let mut s = 0.0;
    for &(x, w) in rule {
        s += w * f(x)?;
    }
    Ok(s)
}

/// ∫₀^∞ u^alpha e^{−u} g(u) du.
///
/// Evaluated at `nodes_per_dim` and 1.5× that many nodes; the node count keeps
/// growing until two successive rules agree to `refinement_tolerance`.
pub fn laguerre(spec: &QuadratureSpec, alpha: f64, what: &str, mut g: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    spec.validate()?;
    let mut n = spec.nodes_per_dim;
    let mut prev = apply(&laguerre_rule(n, alpha), &mut g)?;
    loop {
        let next_n = (n * 3 / 2).min(MAX_NODES);
        if next_n == n {
            return Err(Error::Quadrature(format!("{what}: no agreement up to {MAX_NODES} nodes")));
        }
        let next = apply(&laguerre_rule(next_n, alpha), &mut g)?;
        if !next.is_finite() {
            return Err(Error::Quadrature(format!("{what}: non-finite integrand")));
        }
        if (next - prev).abs() <= spec.refinement_tolerance * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        prev = next;
        n = next_n;
    }
}

/// Adaptive Gauss–Legendre on [a, b] to relative tolerance `tol`.
pub fn adaptive_legendre(a: f64, b: f64, tol: f64, what: &str, f: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let rule = legendre_rule(16);
    let whole = panel(&rule, a, b, f)?;
    let mut stack = vec![(a, b, whole, 0u32)];
    let mut total = 0.0;
    let scale = whole.abs();
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&rule, lo, mid, f)?;
        let right = panel(&rule, mid, hi, f)?;
        let err = (left + right - est).abs();
        if err <= tol * scale.max((left + right).abs()) * ((hi - lo) / (b - a)).max(1e-3) || err < 1e-300 {
            total += left + right;
        } else if depth >= 40 {
            return Err(Error::Quadrature(format!("{what}: adaptive subdivision exhausted")));
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(total)
}

fn panel(rule: &[(f64, f64)], a: f64, b: f64, f: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    let mut s = 0.0;
    for &(x, w) in rule {
        s += w * f(c + h * x)?;
    }
    Ok(s * h)
}
