//! Exponential integrals, incomplete gamma and log-domain combinatorics.

use std::sync::OnceLock;

use crate::error::{domain, Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

/// E_p(z) = ∫₁^∞ e^{−zx} x^{−p} dx.
pub fn exp_integral(p: u32, z: f64) -> Result<f64> {
    check_exp_integral(p, z)?;
    if z == 0.0 {
        return Ok(1.0 / (p - 1) as f64);
    }
    if z > 1.0 {
        Ok(continued_fraction(p, z)? * (-z).exp())
    } else {
        series(p, z)
    }
}

/// e^z · E_p(z), finite for every z > 0 where E_p itself underflows.
pub fn exp_integral_scaled(p: u32, z: f64) -> Result<f64> {
    check_exp_integral(p, z)?;
    if z == 0.0 {
        return Ok(1.0 / (p - 1) as f64);
    }
    if z > 1.0 {
        continued_fraction(p, z)
    } else {
        Ok(series(p, z)? * z.exp())
    }
}

fn check_exp_integral(p: u32, z: f64) -> Result<()> {
    if p < 1 {
        return Err(domain(format!("exponential integral order must be >= 1, got {p}")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain(format!("exponential integral argument must be finite and >= 0, got {z}")));
    }
    if p == 1 && z == 0.0 {
        return Err(domain("E_1(0) diverges"));
    }
    Ok(())
}

// Modified Lentz evaluation of the continued fraction for e^z E_p(z), z > 1.
fn continued_fraction(p: u32, z: f64) -> Result<f64> {
    let nm1 = (p - 1) as f64;
    let mut b = z + p as f64;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let i = i as f64;
        let an = -i * (nm1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence(format!("continued fraction for E_{p}({z})")))
}

fn series(p: u32, z: f64) -> Result<f64> {
    let nm1 = p - 1;
    let mut ans = if nm1 != 0 { 1.0 / nm1 as f64 } else { -z.ln() - EULER_GAMMA };
    let mut fact = 1.0;
    for i in 1..MAX_ITER as u32 {
        fact *= -z / i as f64;
        let del = if i != nm1 {
            -fact / (i as f64 - nm1 as f64)
        } else {
            let psi = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-z.ln() + psi)
        };
        ans += del;
        if del.abs() < ans.abs() * EPS {
            return Ok(ans);
        }
    }
    Err(Error::NoConvergence(format!("series for E_{p}({z})")))
}

/// Γ(a, b) = ∫_b^∞ x^{a−1} e^{−x} dx.
pub fn upper_incomplete_gamma(a: f64, b: f64) -> Result<f64> {
    check_gamma(a, b)?;
    if is_small_int(a) {
        return Ok(ln_upper_gamma_int(a as u32, b)?.exp());
    }
    let ln_full = statrs::function::gamma::ln_gamma(a);
    if b == 0.0 {
        return Ok(ln_full.exp());
    }
    Ok(statrs::function::gamma::gamma_ur(a, b) * ln_full.exp())
}

/// ln Γ(a, b) for integer a ≥ 1, from (a−1)! e^{−b} Σ_{k<a} b^k/k!.
pub fn ln_upper_gamma_int(a: u32, b: f64) -> Result<f64> {
    check_gamma(a as f64, b)?;
    let lf = ln_factorial_table();
    if b == 0.0 {
        return Ok(lf[a as usize - 1]);
    }
    let lb = b.ln();
    let terms = (0..a as usize).map(|k| k as f64 * lb - lf[k]);
    Ok(lf[a as usize - 1] - b + log_sum_exp(terms))
}

fn check_gamma(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("incomplete gamma shape must be > 0, got {a}")));
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(domain(format!("incomplete gamma lower limit must be finite and >= 0, got {b}")));
    }
    Ok(())
}

fn is_small_int(a: f64) -> bool {
    a.fract() == 0.0 && a <= TABLE_LEN as f64
}

pub(crate) fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.map(|t| (t - max).exp()).sum::<f64>().ln()
}

const TABLE_LEN: usize = 1024;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_LEN + 1);
        t.push(0.0);
        let mut prod = 1.0f64;
        for n in 1..=TABLE_LEN {
            if n <= 170 {
                prod *= n as f64;
                t.push(prod.ln());
            } else {
                t.push(statrs::function::gamma::ln_gamma(n as f64 + 1.0));
            }
        }
        t
    })
}

/// ln n!
pub fn log_factorial(n: i64) -> Result<f64> {
    if n < 0 {
        return Err(domain(format!("factorial of negative number {n}")));
    }
    let n = n as usize;
    Ok(match ln_factorial_table().get(n) {
        Some(&v) => v,
        None => statrs::function::gamma::ln_gamma(n as f64 + 1.0),
    })
}

/// Binomial coefficient as a real; exact integer arithmetic up to n = 60.
pub fn binomial(n: i64, k: i64) -> Result<f64> {
    if n < 0 {
        return Err(domain(format!("binomial with negative n = {n}")));
    }
    if k < 0 || k > n {
        return Ok(0.0);
    }
    if n <= 60 {
        let k = k.min(n - k) as u128;
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * (n as u128 - i) / (i + 1);
        }
        return Ok(c as f64);
    }
    Ok((log_factorial(n)? - log_factorial(k)? - log_factorial(n - k)?).exp())
}
