//! Ergodic capacity of an i.i.d. Rayleigh MIMO channel.
//!
//! E log2 det(I_m + s·W) for W an m×m complex Wishart matrix with n ≥ m
//! degrees of freedom. The finite sum is a strongly alternating combination
//! of exponential integrals, so the integer coefficients are built exactly
//! and the final dot product is carried out in extended binary precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::ops::{BitTest, UnsignedAbs};
use dashu_int::{IBig, UBig};

use crate::error::{domain, Error, Result};
use crate::specfun::exp_integral_scaled;

type Float = FBig<HalfEven, 2>;

const LOG2_E: f64 = std::f64::consts::LOG2_E;
const MAX_PRECISION: usize = 1 << 14;

// 400 decimal digits of the Euler-Mascheroni constant.
const EULER_DIGITS: &str = "5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495146314472498070824809605040144865428362241739976449235362535003337429373377376739427925952582470949160087352039481656708532331517766115286211995015079847937450857057400299213547861466940296043254215190587755352673313992540129674205137541395491116851028079842348775872050384310939973613725530608893312";
const EULER_BITS: usize = 1300;

/// Integer coefficients N_j and common denominator D with
/// capacity = log2(e) · Σ_j N_j e^z E_{j+1}(z) / D, z = 1/s.
struct Coefficients {
    numerators: Vec<IBig>,
    denominator: UBig,
    magnitude_bits: usize,
}

fn factorial(n: usize) -> UBig {
    (1..=n).fold(UBig::ONE, |acc, k| acc * UBig::from(k))
}

fn binom(n: usize, k: usize) -> UBig {
    if k > n {
        return UBig::ZERO;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn build_coefficients(m: usize, n: usize) -> Coefficients {
    let d = n - m;
    let fm = factorial(m - 1);
    let f2m = factorial(2 * m - 2);
    let fdm = factorial(d + m - 1);
    let denominator = (UBig::ONE << (2 * (m - 1))) * &fm * &f2m * &fdm;

    let len = d + 2 * (m - 1) + 1;
    // term(k,l,i) multiplies Σ_{j=0}^{d+i} E_{j+1}, so accumulate per i then suffix-sum.
    let mut by_i = vec![IBig::ZERO; 2 * m - 1];
    for k in 0..m {
        for l in 0..=k {
            let outer = factorial(2 * l) * binom(2 * (k - l), k - l) * (&fm / factorial(l)) * (&fdm / factorial(d + l));
            for i in 0..=2 * l {
                let shift = i + 2 * (m - 1) - 2 * k;
                let t = (&outer * factorial(d + i) * binom(2 * (l + d), 2 * l - i) * (&f2m / factorial(i))) << shift;
                let t = IBig::from(t);
                if i % 2 == 0 {
                    by_i[i] += t;
                } else {
                    by_i[i] -= t;
                }
            }
        }
    }
    let mut numerators = vec![IBig::ZERO; len];
    let mut acc = IBig::ZERO;
    for j in (0..len).rev() {
        if j >= d {
            acc += &by_i[j - d];
        }
        numerators[j] = acc.clone();
    }
    let max_bits = numerators.iter().map(|c| c.unsigned_abs().bit_len()).max().unwrap_or(0);
    let magnitude_bits = max_bits.saturating_sub(denominator.bit_len() - 1);
    Coefficients { numerators, denominator, magnitude_bits }
}

fn coefficients(m: usize, n: usize) -> Arc<Coefficients> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Coefficients>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&(m, n)) {
        return c.clone();
    }
    let c = Arc::new(build_coefficients(m, n));
    cache.lock().unwrap().insert((m, n), c.clone());
    c
}

/// E log2 det(I + snr·X X^H) for X an r×t matrix of i.i.d. CN(0,1) entries.
/// Symmetric in (t, r).
pub fn rayleigh_capacity(t: usize, r: usize, snr: f64) -> Result<f64> {
    if t == 0 || r == 0 {
        return Err(domain("antenna counts must be >= 1"));
    }
    if !(snr >= 0.0) || !snr.is_finite() {
        return Err(domain(format!("snr must be finite and >= 0, got {snr}")));
    }
    if snr == 0.0 {
        return Ok(0.0);
    }
    let (m, n) = (t.min(r), t.max(r));
    let z = 1.0 / snr;
    if m == 1 {
        // A single chi-square eigenvalue: every term is positive.
        let mut s = 0.0;
        for p in 1..=n as u32 {
            s += exp_integral_scaled(p, z)?;
        }
        return Ok(LOG2_E * s);
    }
    let coef = coefficients(m, n);
    let orders = coef.numerators.len();
    let amplification = if z < orders as f64 { (1.5 * z).ceil() as usize } else { 0 };
    let mut prec = 96 + coef.magnitude_bits + amplification;
    let mut prev = evaluate(&coef, z, prec)?;
    loop {
        prec += 48;
        let next = evaluate(&coef, z, prec)?;
        if (next - prev).abs() <= 1e-14 * next.abs() {
            return Ok(next.max(0.0));
        }
        if prec > MAX_PRECISION {
            return Err(Error::NoConvergence(format!("capacity sum for m={m}, n={n}, snr={snr}")));
        }
        prev = next;
        prec *= 2;
    }
}

fn float(x: f64, prec: usize) -> Float {
    Float::try_from(x).expect("finite").with_precision(prec).value()
}

fn int(x: impl Into<IBig>, prec: usize) -> Float {
    Float::from(x.into()).with_precision(prec).value()
}

fn log2_magnitude(x: &Float) -> isize {
    if *x.repr().significand() == IBig::ZERO {
        return isize::MIN / 2;
    }
    x.repr().exponent() + x.repr().digits() as isize
}

fn evaluate(coef: &Coefficients, z: f64, prec: usize) -> Result<f64> {
    let scaled = scaled_exp_integrals(z, coef.numerators.len(), prec)?;
    let mut sum = int(0, prec);
    for (c, e) in coef.numerators.iter().zip(&scaled) {
        sum += int(c.clone(), prec) * e;
    }
    let value = sum / int(coef.denominator.clone(), prec);
    Ok(LOG2_E * value.to_f64().value())
}

/// e^z E_p(z) for p = 1..=count.
fn scaled_exp_integrals(z: f64, count: usize, prec: usize) -> Result<Vec<Float>> {
    let zf = float(z, prec);
    let mut out = Vec::with_capacity(count);
    if z >= count as f64 {
        // Downward recurrence is stable once z exceeds every order.
        let top = continued_fraction(&zf, count, prec)?;
        out.resize(count, top.clone());
        let mut cur = top;
        for p in (1..count).rev() {
            cur = (int(1, prec) - int(p as i64, prec) * &cur) / &zf;
            out[p - 1] = cur.clone();
        }
    } else {
        let mut cur = if z <= 8.0 { e1_series(&zf, prec)? } else { continued_fraction(&zf, 1, prec)? };
        out.push(cur.clone());
        for p in 1..count {
            cur = (int(1, prec) - &zf * &cur) / int(p as i64, prec);
            out.push(cur.clone());
        }
    }
    Ok(out)
}

fn euler_gamma(prec: usize) -> Result<Float> {
    if prec > EULER_BITS {
        return Err(Error::NoConvergence(format!("Euler constant requested at {prec} bits")));
    }
    let digits: IBig = EULER_DIGITS.parse().expect("valid digits");
    let scale = IBig::from(10u8).pow(EULER_DIGITS.len());
    Ok(int(digits, prec) / int(scale, prec))
}

// e^z E_1(z) from the convergent power series, z ≤ 8.
fn e1_series(z: &Float, prec: usize) -> Result<Float> {
    let work = prec + 16;
    let z = z.clone().with_precision(work).value();
    let mut sum = int(0, work);
    let mut power = int(1, work);
    for k in 1..100_000i64 {
        power = -(power * &z) / int(k, work);
        let term = &power / int(k, work);
        sum += &term;
        if log2_magnitude(&term) < log2_magnitude(&sum) - work as isize {
            let e1 = -euler_gamma(work)? - z.ln() - sum;
            return Ok((e1 * z.exp()).with_precision(prec).value());
        }
    }
    Err(Error::NoConvergence("exponential integral series".into()))
}

// Lentz continued fraction for e^z E_p(z), z > 1.
fn continued_fraction(z: &Float, p: usize, prec: usize) -> Result<Float> {
    let one = int(1, prec);
    let tiny = Float::from_parts(IBig::ONE, -(4 * prec as isize)).with_precision(prec).value();
    let mut b = z + int(p as i64, prec);
    let mut c = &one / &tiny;
    let mut d = &one / &b;
    let mut h = d.clone();
    let two = int(2, prec);
    for i in 1..1_000_000i64 {
        let an = int(-i * (p as i64 - 1 + i), prec);
        b += &two;
        d = &one / (&an * &d + &b);
        c = &b + &an / &c;
        let del = &c * &d;
        h *= &del;
        if log2_magnitude(&(del - &one)) < -(prec as isize) {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence("exponential integral continued fraction".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::exp_integral;

    #[test]
    fn single_antenna_is_rayleigh_siso() {
        for &x in &[0.1f64, 1.0, 10.0, 1000.0] {
            let want = LOG2_E * (1.0 / x).exp() * exp_integral(1, 1.0 / x).unwrap();
            let got = rayleigh_capacity(1, 1, x).unwrap();
            assert!((got - want).abs() <= 1e-12 * want, "{x}: {got} vs {want}");
        }
    }

    #[test]
    fn extended_precision_matches_f64_where_f64_is_accurate() {
        // For tiny systems the alternating sum is harmless in double precision.
        let s: f64 = 2.0;
        let z = 1.0 / s;
        let e: Vec<f64> = (1..=3).map(|p| exp_integral_scaled(p, z).unwrap()).collect();
        // m = n = 2: coefficients from the closed form by hand.
        let c = build_coefficients(2, 2);
        let d = c.denominator.to_f64().value();
        let direct: f64 = c.numerators.iter().zip(&e).map(|(n, e)| n.to_f64().value() * e).sum::<f64>() / d;
        let got = rayleigh_capacity(2, 2, s).unwrap();
        assert!((got - LOG2_E * direct).abs() < 1e-12 * got);
    }

    #[test]
    fn scaled_integrals_agree_with_double_precision() {
        for &z in &[0.05, 0.7, 3.0, 9.5, 40.0] {
            let v = scaled_exp_integrals(z, 12, 160).unwrap();
            for (p, x) in v.iter().enumerate() {
                let want = exp_integral_scaled(p as u32 + 1, z).unwrap();
                let got = x.to_f64().value();
                assert!((got - want).abs() <= 1e-13 * want, "z={z} p={}: {got} vs {want}", p + 1);
            }
        }
    }

    #[test]
    fn zero_snr_and_domain() {
        assert_eq!(rayleigh_capacity(4, 3, 0.0).unwrap(), 0.0);
        assert!(rayleigh_capacity(4, 3, -1.0).is_err());
        assert!(rayleigh_capacity(0, 3, 1.0).is_err());
    }

    #[test]
    fn large_system_is_finite_and_symmetric() {
        let a = rayleigh_capacity(16, 32, 10.0 / 16.0).unwrap();
        let b = rayleigh_capacity(32, 16, 10.0 / 16.0).unwrap();
        assert_eq!(a, b);
        assert!(a > 0.0 && a.is_finite());
    }
}
