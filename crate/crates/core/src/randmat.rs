//! Complex Gaussian sampling, spectral decompositions and the densities of
//! the scaled signal power A and the minimum eigenvalue B.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

use crate::error::{domain, Error, Result};
use crate::quadrature::{self, QuadratureSpec};
use crate::specfun::{ln_upper_gamma_int, log_factorial};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const SVD_MAX_ITER: usize = 100_000;

type Float = FBig<HalfEven, 2>;

/// Counter-based stream: trial `stream_id` of experiment `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream_id);
        r
    }
}

/// Matrix of i.i.d. CN(0,1) entries, filled row-major.
pub fn sample_complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Result<CMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension(format!("cannot sample a {rows}x{cols} matrix")));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[(i, j)] = C64::new(s * re, s * im);
        }
    }
    Ok(m)
}

/// Full SVD M = U diag(σ) V^H with U, V square unitary and σ nonincreasing.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: DVector<f64>,
    pub v: CMatrix,
}

pub fn svd(m: &CMatrix) -> Result<Svd> {
    check_finite(m)?;
    let (r, c) = m.shape();
    let k = r.min(c);
    let dec = m
        .clone()
        .try_svd(true, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NoConvergence(format!("SVD of {r}x{c} matrix")))?;
    let (u, v_t) = (dec.u.expect("requested"), dec.v_t.expect("requested"));
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| dec.singular_values[b].total_cmp(&dec.singular_values[a]));
    let sv = DVector::from_iterator(k, order.iter().map(|&i| dec.singular_values[i]));
    let u_thin = CMatrix::from_fn(r, k, |i, j| u[(i, order[j])]);
    let v_thin = CMatrix::from_fn(c, k, |i, j| v_t[(order[j], i)].conj());
    Ok(Svd { u: complete_basis(&u_thin), singular_values: sv, v: complete_basis(&v_thin) })
}

/// Extend n×k orthonormal columns to an n×n unitary matrix.
pub fn complete_basis(q: &CMatrix) -> CMatrix {
    let (n, k) = q.shape();
    if k == n {
        return q.clone();
    }
    let mut aug = CMatrix::zeros(n, k + n);
    aug.view_mut((0, 0), (n, k)).copy_from(q);
    aug.view_mut((0, k), (n, n)).fill_with_identity();
    let full = aug.qr().q();
    let mut out = full.columns(0, n).into_owned();
    out.view_mut((0, 0), (n, k)).copy_from(q);
    out
}

fn check_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(domain("matrix has non-finite entries"))
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_part(m: &CMatrix) -> Result<CMatrix> {
    let (r, c) = m.shape();
    if r != c {
        return Err(Error::Dimension(format!("expected a square matrix, got {r}x{c}")));
    }
    check_finite(m)?;
    let asym = max_abs(&(m - m.adjoint()));
    if asym > 1e-10 * max_abs(m).max(1.0) {
        return Err(domain(format!("matrix is not Hermitian (asymmetry {asym:e})")));
    }
    Ok((m + m.adjoint()).scale(0.5))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let h = hermitian_part(m)?;
    let n = h.nrows();
    let e = SymmetricEigen::try_new(h, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NoConvergence(format!("eigen-decomposition of {n}x{n} matrix")))?;
    let mut v: Vec<f64> = e.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Smallest eigenvalue and a unit eigenvector of a Hermitian PSD matrix.
pub fn min_eigenpair(m: &CMatrix) -> Result<(f64, DVector<C64>)> {
    let h = hermitian_part(m)?;
    let n = h.nrows();
    let scale = max_abs(&h).max(1.0);
    let e = SymmetricEigen::try_new(h, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NoConvergence(format!("eigen-decomposition of {n}x{n} matrix")))?;
    let idx = e.eigenvalues.argmin().0;
    let lambda = e.eigenvalues[idx];
    if lambda < -1e-10 * scale {
        return Err(domain(format!("matrix is not positive semidefinite (eigenvalue {lambda:e})")));
    }
    let v = e.eigenvectors.column(idx).into_owned();
    let norm = v.norm();
    Ok((lambda.max(0.0), v.unscale(norm)))
}

/// log2 det(I + s·X X^H) from the singular values of X.
pub fn log2det_gram(x: &CMatrix, s: f64) -> Result<f64> {
    if x.nrows() == 0 || x.ncols() == 0 {
        return Ok(0.0);
    }
    check_finite(x)?;
    let sv = x
        .clone()
        .try_svd(false, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NoConvergence("singular values for log-det".into()))?
        .singular_values;
    Ok(sv.iter().map(|v| (s * v * v).ln_1p()).sum::<f64>() * std::f64::consts::LOG2_E)
}

/// Density of A with 2A ~ χ²(2 n_b): a^{n_b−1} e^{−a} / (n_b−1)!.
pub fn chi2_scaled_pdf(a: f64, n_b: u32) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(domain(format!("density argument must be >= 0, got {a}")));
    }
    if n_b == 0 {
        return Err(domain("n_b must be >= 1"));
    }
    if a == 0.0 {
        return Ok(if n_b == 1 { 1.0 } else { 0.0 });
    }
    Ok(((n_b - 1) as f64 * a.ln() - a - log_factorial(n_b as i64 - 1)?).exp())
}

/// P(A ≤ a) for the same law.
pub fn chi2_scaled_cdf(a: f64, n_b: u32) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(domain(format!("distribution argument must be >= 0, got {a}")));
    }
    Ok(1.0 - (ln_upper_gamma_int(n_b, a)? - log_factorial(n_b as i64 - 1)?).exp())
}

fn min_eig_dims(n_a: u32, n_b: u32, n_e: u32) -> Result<(usize, usize)> {
    if n_a <= n_b || n_b == 0 || n_e == 0 {
        return Err(domain(format!("need n_a > n_b >= 1 and n_e >= 1, got ({n_a}, {n_b}, {n_e})")));
    }
    if n_e > n_a - n_b {
        return Err(domain(format!("minimum-eigenvalue density needs n_e <= n_a - n_b, got ({n_a}, {n_b}, {n_e})")));
    }
    Ok(((n_a - n_b) as usize, n_e as usize))
}

/// The printed cofactor form of f_B(b)·e^{m b}: a double sum over (p, q) of
/// signed (m−1)×(m−1) minors of incomplete gamma values, evaluated in f64.
/// Accurate only for small n_e; kept as a cross-check of the exact form.
pub fn wishart_min_eig_pdf_cofactor(b: f64, n_a: u32, n_b: u32, n_e: u32) -> Result<f64> {
    let (n, m) = min_eig_dims(n_a, n_b, n_e)?;
    check_density_arg(b)?;
    let mut ln_k = 0.0;
    for i in 1..=m {
        ln_k -= log_factorial((n - i) as i64)? + log_factorial((m - i) as i64)?;
    }
    let d = n - m;
    // e^{b}·Γ(a, b) for every shape that can occur.
    let mut table = vec![0.0; 2 * m + d + 1];
    for (a, t) in table.iter_mut().enumerate().skip(1) {
        *t = (ln_upper_gamma_int(a as u32, b)? + b).exp();
    }
    let mut total = 0.0;
    let mut minor = DMatrix::<f64>::zeros(m - 1, m - 1);
    for p in 1..=m {
        for q in 1..=m {
            for i in 1..m {
                for j in 1..m {
                    let alpha = if i < p && j < q {
                        i + j - 2
                    } else if i >= p && j >= q {
                        i + j
                    } else {
                        i + j - 1
                    };
                    minor[(i - 1, j - 1)] = table[alpha + d + 1];
                }
            }
            let det = if m == 1 { 1.0 } else { minor.clone().lu().determinant() };
            let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * b.powi((p + q - 2 + d) as i32) * det;
        }
    }
    Ok(ln_k.exp() * total)
}

fn check_density_arg(b: f64) -> Result<()> {
    if !(b >= 0.0) || !b.is_finite() {
        return Err(domain(format!("density argument must be finite and >= 0, got {b}")));
    }
    Ok(())
}

/// f_B(b)·e^{m b} with m = n_e, a polynomial in b.
///
/// The (p, q) minors of the cofactor form are the minors of the Hankel matrix
/// T = [e^b Γ(d+I+J−1, b)], so the double sum equals −b^d det[[T, x], [x^T, 0]]
/// with x = (1, b, …, b^{m−1}). That determinant is evaluated exactly at
/// integer b and interpolated, which yields exact polynomial coefficients;
/// the alternating sum is therefore free of cancellation error.
pub fn wishart_min_eig_pdf_scaled(b: f64, n_a: u32, n_b: u32, n_e: u32) -> Result<f64> {
    let (n, m) = min_eig_dims(n_a, n_b, n_e)?;
    check_density_arg(b)?;
    Ok(min_eig_polynomial(n, m).eval(b).max(0.0))
}

struct ExactPolynomial {
    coeffs: Vec<Float>,
}

impl ExactPolynomial {
    fn eval(&self, x: f64) -> f64 {
        let xf = Float::try_from(x).expect("finite").with_precision(POLY_PRECISION).value();
        let mut acc = Float::ZERO.with_precision(POLY_PRECISION).value();
        for c in self.coeffs.iter().rev() {
            acc = acc * &xf + c;
        }
        acc.to_f64().value()
    }
}

const POLY_PRECISION: usize = 256;

fn min_eig_polynomial(n: usize, m: usize) -> Arc<ExactPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<ExactPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(n, m)) {
        return p.clone();
    }
    let p = Arc::new(build_min_eig_polynomial(n, m));
    cache.lock().unwrap().insert((n, m), p.clone());
    p
}

fn factorial(n: usize) -> IBig {
    (1..=n).fold(IBig::ONE, |acc, k| acc * IBig::from(k))
}

fn build_min_eig_polynomial(n: usize, m: usize) -> ExactPolynomial {
    let d = n - m;
    // Degree bound: d plus the largest degree in each row of the bordered matrix.
    let degree = d + (1..=m).map(|i| d + i + m - 2).sum::<usize>() + (m - 1);
    let values: Vec<IBig> = (0..=degree).map(|k| bordered_value(d, m, k)).collect();

    // Newton forward differences at 0, 1, …, degree.
    let mut diffs = Vec::with_capacity(values.len());
    let mut row = values;
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // P(x) = Σ_j Δ^j · x(x−1)…(x−j+1)/j!, expanded with common denominator degree!.
    let mut numer = vec![IBig::ZERO; degree + 1];
    let mut falling = vec![IBig::ONE];
    let full = factorial(degree);
    let mut j_fact = IBig::ONE;
    for (j, delta) in diffs.iter().enumerate() {
        if j > 0 {
            j_fact *= IBig::from(j);
            let mut next = vec![IBig::ZERO; falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * IBig::from(j - 1);
            }
            falling = next;
        }
        if *delta == IBig::ZERO {
            continue;
        }
        let scale = delta * (&full / &j_fact);
        for (i, c) in falling.iter().enumerate() {
            numer[i] += c * &scale;
        }
    }
    while numer.len() > 1 && *numer.last().unwrap() == IBig::ZERO {
        numer.pop();
    }

    let mut denom = full;
    for i in 1..=m {
        denom *= factorial(n - i) * factorial(m - i);
    }
    let denom = Float::from(denom).with_precision(POLY_PRECISION).value();
    let coeffs = numer.into_iter().map(|c| Float::from(c).with_precision(POLY_PRECISION).value() / &denom).collect();
    ExactPolynomial { coeffs }
}

// k^d · x^T adj(T) x at the integer point b = k, as an exact integer.
fn bordered_value(d: usize, m: usize, k: usize) -> IBig {
    let kb = IBig::from(k);
    // e^k Γ(a, k) = Σ_{s<a} c_s k^s with c_s = (a−1)!/s!, by Horner from the top.
    let gamma_poly = |a: usize| -> IBig {
        let mut c = IBig::ONE;
        let mut acc = IBig::ONE;
        for s in (0..a - 1).rev() {
            c *= IBig::from(s + 1);
            acc = acc * &kb + &c;
        }
        acc
    };
    let size = m + 1;
    let mut a = vec![vec![IBig::ZERO; size]; size];
    for i in 0..m {
        for j in 0..m {
            a[i][j] = gamma_poly(d + i + j + 1);
        }
        let x = kb.pow(i);
        a[i][m] = x.clone();
        a[m][i] = x;
    }
    -det_bareiss(a) * kb.pow(d)
}

fn det_bareiss(mut a: Vec<Vec<IBig>>) -> IBig {
    let n = a.len();
    let mut sign = IBig::ONE;
    let mut prev = IBig::ONE;
    for k in 0..n - 1 {
        if a[k][k] == IBig::ZERO {
            match (k + 1..n).find(|&r| a[r][k] != IBig::ZERO) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return IBig::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Density of B = λ_min(G V₀ V₀^H G^H), an n_e×n_e complex Wishart matrix
/// with n_a − n_b degrees of freedom.
pub fn wishart_min_eig_pdf(b: f64, n_a: u32, n_b: u32, n_e: u32) -> Result<f64> {
    let s = wishart_min_eig_pdf_scaled(b, n_a, n_b, n_e)?;
    Ok(s * (-(n_e as f64) * b).exp())
}

/// μ = E[B].
pub fn mean_min_eig(n_a: u32, n_b: u32, n_e: u32) -> Result<f64> {
    mean_min_eig_with(n_a, n_b, n_e, &QuadratureSpec::default())
}

pub fn mean_min_eig_with(n_a: u32, n_b: u32, n_e: u32, quad: &QuadratureSpec) -> Result<f64> {
    min_eig_dims(n_a, n_b, n_e)?;
    let m = n_e as f64;
    // b = u/m turns e^{−m b} into the Laguerre weight.
    let v = quadrature::laguerre(quad, 0.0, "mean of the minimum eigenvalue", |u| {
        let b = u / m;
        Ok(b * wishart_min_eig_pdf_scaled(b, n_a, n_b, n_e)? / m)
    })?;
    if !(v > 0.0) {
        return Err(Error::Quadrature(format!("mean of the minimum eigenvalue came out as {v}")));
    }
    Ok(v)
}
