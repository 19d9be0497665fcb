#![allow(dead_code)]

/// Adaptive Simpson on [a, b], written independently of the library quadrature.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Kolmogorov–Smirnov distance between a sample and a continuous CDF.
pub fn ks_distance(samples: &mut [f64], cdf: &dyn Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            (c - i as f64 / n).abs().max((c - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

/// Tabulated CDF of a density on [0, upper] by cumulative Simpson panels.
pub struct GridCdf {
    h: f64,
    values: Vec<f64>,
}

impl GridCdf {
    pub fn new(pdf: &dyn Fn(f64) -> f64, upper: f64, panels: usize) -> Self {
        let h = upper / panels as f64;
        let mut values = Vec::with_capacity(panels + 1);
        values.push(0.0);
        let mut acc = 0.0;
        for k in 0..panels {
            let a = k as f64 * h;
            acc += h / 6.0 * (pdf(a) + 4.0 * pdf(a + 0.5 * h) + pdf(a + h));
            values.push(acc);
        }
        Self { h, values }
    }

    pub fn total(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x / self.h;
        let k = t.floor() as usize;
        if k + 1 >= self.values.len() {
            return self.total();
        }
        let w = t - k as f64;
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
