//! Figure reproduction. Each figure is a registered [`Figure`] that sweeps its
//! caption parameters and returns one table with a column per curve.
//!
//! Column names carry the curve's parameter (`analytic_rs_na14`, `sim_rs_beta2`),
//! `sim_*` columns are Monte Carlo, `analytic_*` finite-antenna closed forms,
//! `approx_*` finite-size approximations and `asymptotic_*` large-system limits.
//! Normalized figures report the mean and median over independent realizations
//! of the instantaneous R_s/N_b.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use an_wiretap::asymptotics::{
    corollary4, normalized_secrecy_rate_an, normalized_secrecy_rate_no_an, AsymptoticRatios,
};
use an_wiretap::closed_form::{
    approx_secrecy_rate_an_with, approx_secrecy_rate_no_an, avg_capacity_bob, avg_rates_an, avg_rates_no_an,
};
use an_wiretap::montecarlo::{estimate_with, run_trials, MonteCarloOptions};
use an_wiretap::{MonteCarloEstimate, NoAnModel, QuadratureSpec, SimulationMode, SystemConfig};

use crate::config::db_to_linear;
use crate::error::{CliError, Result};
use crate::output::Table;

const AN: SimulationMode = SimulationMode::AnWithAne;
const NO_AN: SimulationMode = SimulationMode::NoAn;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Desk,
    Full,
}

impl FromStr for Scale {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "full" => Ok(Scale::Full),
            _ => Err(CliError::Config(format!("--scale: expected desk or full, got {s:?}"))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Desk => "desk",
            Scale::Full => "full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureContext {
    pub scale: Scale,
    pub seed: u64,
    pub workers: Option<usize>,
    /// Monte Carlo trials per averaged point.
    pub trials: u64,
    /// Independent realizations per instantaneous (normalized) point.
    pub realizations: u64,
    /// Largest N_b in the large-system figures.
    pub nb_cap: u32,
    pub quadrature: QuadratureSpec,
}

impl FigureContext {
    pub fn new(scale: Scale, seed: u64) -> Self {
        let (trials, realizations, nb_cap) = match scale {
            Scale::Desk => (2_000, 20, 64),
            Scale::Full => (10_000, 100, 128),
        };
        Self { scale, seed, workers: None, trials, realizations, nb_cap, quadrature: QuadratureSpec::default() }
    }

    fn options(&self, no_an_model: NoAnModel) -> MonteCarloOptions {
        MonteCarloOptions { workers: self.workers, no_an_model }
    }

    fn mc(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<MonteCarloEstimate> {
        Ok(estimate_with(cfg, mode, self.trials, self.seed, &self.options(NoAnModel::default()))?)
    }

    /// Instantaneous R_s/N_b over `realizations` draws: (mean, median).
    fn normalized(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<(f64, f64)> {
        let trials = run_trials(cfg, mode, self.realizations, self.seed, &self.options(NoAnModel::default()))?;
        let mut v: Vec<f64> = trials.iter().map(|t| t.secrecy() / cfg.n_b as f64).collect();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        Ok((mean, median(&mut v)))
    }

    /// Secrecy rate of a single draw, the first trial of the seed.
    fn single(&self, cfg: &SystemConfig, mode: SimulationMode) -> Result<f64> {
        let t = run_trials(cfg, mode, 1, self.seed, &self.options(NoAnModel::default()))?;
        Ok(t[0].secrecy())
    }
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub trait Figure: Send + Sync {
    fn id(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn generate(&self, ctx: &FigureContext) -> Result<Table>;
}

#[derive(Default)]
pub struct FigureRegistry {
    figures: BTreeMap<&'static str, Box<dyn Figure>>,
}

impl FigureRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        let mut r = Self::new();
        let all: Vec<Box<dyn Figure>> = vec![
            Box::new(Fig2),
            Box::new(Fig3),
            Box::new(Fig4),
            Box::new(Fig5),
            Box::new(Fig6),
            Box::new(Fig7),
            Box::new(Fig8),
            Box::new(Fig9),
            Box::new(Fig10),
            Box::new(Fig11),
            Box::new(Fig12),
            Box::new(Fig13),
            Box::new(Fig14),
            Box::new(Fig15),
            Box::new(Fig16),
            Box::new(Fig17),
            Box::new(Cor8),
            Box::new(Cor11),
        ];
        for f in all {
            r.register(f);
        }
        r
    }

    pub fn register(&mut self, figure: Box<dyn Figure>) {
        self.figures.insert(figure.id(), figure);
    }

    pub fn get(&self, id: &str) -> Result<&dyn Figure> {
        self.figures.get(id).map(|f| f.as_ref()).ok_or_else(|| {
            CliError::Config(format!("unknown figure {id:?} (known: {})", self.ids().collect::<Vec<_>>().join(", ")))
        })
    }

    /// Ids in natural order: fig2 before fig10.
    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        let mut ids: Vec<_> = self.figures.keys().copied().collect();
        ids.sort_by_key(|id| {
            let digits: String = id.chars().filter(char::is_ascii_digit).collect();
            (id.trim_end_matches(|c: char| c.is_ascii_digit()).to_owned(), digits.parse::<u32>().unwrap_or(0))
        });
        ids.into_iter()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Figure> + '_ {
        self.ids().map(|id| self.figures[id].as_ref())
    }
}

/// Builds the rows of a table from an x grid. A failing point becomes an error row.
fn tabulate<X: Copy + Into<f64>>(
    columns: Vec<String>,
    xs: impl IntoIterator<Item = X>,
    mut point: impl FnMut(X) -> Result<Vec<f64>>,
) -> Table {
    let mut t = Table::new(columns);
    let width = t.columns.len();
    for x in xs {
        match point(x) {
            Ok(vals) => {
                let mut cells = vec![Some(x.into())];
                cells.extend(vals.into_iter().map(Some));
                t.push(cells);
            }
            Err(e) => {
                let mut cells = vec![Some(x.into())];
                cells.resize(width, None);
                t.push_error(cells, e.to_string());
            }
        }
    }
    t
}

fn cols(x: &str, rest: impl IntoIterator<Item = String>) -> Vec<String> {
    std::iter::once(x.to_owned()).chain(rest).collect()
}

fn label(v: f64) -> String {
    format!("{v}")
}

fn cfg(n_a: u32, n_b: u32, n_e: u32, alpha: f64, beta: f64, gamma: f64) -> Result<SystemConfig> {
    Ok(SystemConfig::new(n_a, n_b, n_e, alpha, beta, gamma)?)
}

/// N_b grid for the large-system figures: multiples of `step` up to the cap.
fn nb_grid(ctx: &FigureContext, step: u32) -> Vec<u32> {
    (1..).map(|k| k * step).take_while(|&n| n <= ctx.nb_cap).collect()
}

fn db_grid(from: i32, to: i32, step: usize) -> Vec<f64> {
    (from..=to).step_by(step).map(|d| d as f64).collect()
}

/// R̄_s, R̄_b, R̄_e with AN versus N_e, simulation and closed form.
struct Fig2;

impl Figure for Fig2 {
    fn id(&self) -> &'static str {
        "fig2"
    }
    fn about(&self) -> &'static str {
        "average rates with AN vs N_e (N_a=16, N_b=8, alpha=20 dB, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let names = ["sim_rs", "sim_rs_stderr", "sim_rb", "sim_re", "analytic_rs", "analytic_rb", "analytic_re"];
        Ok(tabulate(cols("n_e", names.map(String::from)), 9u32..=23, |n_e| {
            let c = cfg(16, 8, n_e, 100.0, 1.0, 1.0)?;
            let e = ctx.mc(&c, AN)?;
            let a = avg_rates_an(&c, &ctx.quadrature)?;
            Ok(vec![
                e.mean,
                e.std_error,
                e.per_term_means.rate_bob,
                e.per_term_means.rate_eve,
                a.secrecy(),
                a.bob,
                a.eve,
            ])
        }))
    }
}

/// R̄_s with AN versus N_e in the residual regime for several β.
struct Fig3;

const FIG3_BETAS: [f64; 3] = [0.5, 1.0, 2.0];

impl Figure for Fig3 {
    fn id(&self) -> &'static str {
        "fig3"
    }
    fn about(&self) -> &'static str {
        "average secrecy rate with AN vs N_e <= N_a - N_b (N_a=16, N_b=8, alpha=20 dB, gamma=1, beta in {0.5, 1, 2})"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let names = FIG3_BETAS
            .iter()
            .flat_map(|b| [format!("sim_rs_beta{}", label(*b)), format!("analytic_rs_beta{}", label(*b))]);
        Ok(tabulate(cols("n_e", names), 1u32..=8, |n_e| {
            let mut out = Vec::new();
            for beta in FIG3_BETAS {
                let c = cfg(16, 8, n_e, 100.0, beta, 1.0)?;
                out.push(ctx.mc(&c, AN)?.mean);
                out.push(avg_rates_an(&c, &ctx.quadrature)?.secrecy());
            }
            Ok(out)
        }))
    }
}

/// Instantaneous R_s/N_b versus N_b against a large-system law at fixed ratios.
fn normalized_vs_nb(
    ctx: &FigureContext,
    step: u32,
    curves: &[(&str, f64, f64, f64, f64, f64, SimulationMode)],
) -> Table {
    let names = curves
        .iter()
        .flat_map(|(tag, ..)| [format!("sim_mean_{tag}"), format!("sim_median_{tag}"), format!("asymptotic_{tag}")]);
    tabulate(cols("n_b", names), nb_grid(ctx, step), |n_b| {
        let mut out = Vec::new();
        for &(_, d1, d2, alpha, beta, gamma, mode) in curves {
            let nb = n_b as f64;
            let c = cfg((d2 * nb).round() as u32, n_b, (d1 * nb).round() as u32, alpha, beta, gamma)?;
            let (mean, med) = ctx.normalized(&c, mode)?;
            let r = AsymptoticRatios::new(d1, d2)?;
            let law = match mode {
                SimulationMode::AnWithAne => normalized_secrecy_rate_an(&r, n_b, alpha, gamma),
                SimulationMode::NoAn => normalized_secrecy_rate_no_an(&r, n_b, alpha, beta, gamma),
            };
            out.extend([mean, med, law]);
        }
        Ok(out)
    })
}

/// R_s/N_b versus N_b with complete elimination.
struct Fig4;

impl Figure for Fig4 {
    fn id(&self) -> &'static str {
        "fig4"
    }
    fn about(&self) -> &'static str {
        "R_s/N_b with AN vs N_b (alpha=20 dB, beta=1, gamma=5, delta1=2.5, delta2=2)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        Ok(normalized_vs_nb(ctx, 8, &[("d1_2.5_d2_2", 2.5, 2.0, 100.0, 1.0, 5.0, AN)]))
    }
}

/// R_s/N_b versus N_b with residual AN at Eve. Two parameter sets are quoted
/// for this figure; both are emitted.
struct Fig5;

impl Figure for Fig5 {
    fn id(&self) -> &'static str {
        "fig5"
    }
    fn about(&self) -> &'static str {
        "R_s/N_b with AN vs N_b, N_e <= N_a - N_b (caption: beta=10, gamma=5, delta1=0.5, delta2=1.5; \
         text: beta=1, gamma=1, delta1=1, delta2=3; alpha=20 dB)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        Ok(normalized_vs_nb(
            ctx,
            8,
            &[
                ("d1_0.5_d2_1.5_beta10_gamma5", 0.5, 1.5, 100.0, 10.0, 5.0, AN),
                ("d1_1_d2_3_beta1_gamma1", 1.0, 3.0, 100.0, 1.0, 1.0, AN),
            ],
        ))
    }
}

/// R_s/N_b versus N_b with N_a = N_e = N_b + 1.
struct Fig6;

impl Figure for Fig6 {
    fn id(&self) -> &'static str {
        "fig6"
    }
    fn about(&self) -> &'static str {
        "R_s/N_b with AN vs N_b for N_a = N_e = N_b + 1 (alpha=20 dB, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let names = ["sim_mean", "sim_median", "asymptotic"].map(String::from);
        Ok(tabulate(cols("n_b", names), nb_grid(ctx, 4), |n_b| {
            let c = cfg(n_b + 1, n_b, n_b + 1, 100.0, 1.0, 1.0)?;
            let (mean, med) = ctx.normalized(&c, AN)?;
            let law = normalized_secrecy_rate_an(&AsymptoticRatios::from_config(&c), n_b, 100.0, 1.0);
            Ok(vec![mean, med, law])
        }))
    }
}

/// R_s/N_b versus δ1 at N_a = 40, N_b = 20.
struct Fig7;

impl Figure for Fig7 {
    fn id(&self) -> &'static str {
        "fig7"
    }
    fn about(&self) -> &'static str {
        "R_s/N_b with AN vs delta1 (N_a=40, N_b=20, alpha=20 dB, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let names = ["n_e", "sim_mean", "sim_median", "asymptotic"].map(String::from);
        let n_es: Vec<u32> = (1..=40).map(|k| 5 * k).collect();
        Ok(tabulate(cols("delta1", names), n_es.iter().map(|&n| n as f64 / 20.0), |d1| {
            let n_e = (d1 * 20.0).round() as u32;
            let c = cfg(40, 20, n_e, 100.0, 1.0, 1.0)?;
            let (mean, med) = ctx.normalized(&c, AN)?;
            let law = normalized_secrecy_rate_an(&AsymptoticRatios::from_config(&c), 20, 100.0, 1.0);
            Ok(vec![n_e as f64, mean, med, law])
        }))
    }
}

/// R̄_s with AN versus N_e at γ = 0.5 for N_a ∈ {14, 15, 16}.
struct Fig8;

const FIG8_NA: [u32; 3] = [14, 15, 16];

impl Figure for Fig8 {
    fn id(&self) -> &'static str {
        "fig8"
    }
    fn about(&self) -> &'static str {
        "average secrecy rate with AN vs N_e (N_b=8, alpha=20 dB, beta=1, gamma=0.5, N_a in {14, 15, 16})"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let names = FIG8_NA.iter().flat_map(|n| [format!("sim_rs_na{n}"), format!("analytic_rs_na{n}")]);
        Ok(tabulate(cols("n_e", names), 1u32..=30, |n_e| {
            let mut out = Vec::new();
            for n_a in FIG8_NA {
                let c = cfg(n_a, 8, n_e, 100.0, 1.0, 0.5)?;
                out.push(ctx.mc(&c, AN)?.mean);
                out.push(avg_rates_an(&c, &ctx.quadrature)?.secrecy());
            }
            Ok(out)
        }))
    }
}

/// Large-system R_s/N_b over the (δ1, δ2) plane; `zero_region` marks δ1 ≥ 2δ2 − 1.
struct Fig9;

impl Figure for Fig9 {
    fn id(&self) -> &'static str {
        "fig9"
    }
    fn about(&self) -> &'static str {
        "large-system R_s/N_b with AN over (delta1, delta2) (N_b=50, alpha=10 dB, beta=10, gamma=1)"
    }
    fn generate(&self, _ctx: &FigureContext) -> Result<Table> {
        let mut t = Table::new(["delta1", "delta2", "asymptotic", "zero_region"]);
        for i in 1..=40 {
            for j in 1..=30 {
                let (d1, d2) = (0.1 * i as f64, 1.0 + 0.1 * j as f64);
                let r = AsymptoticRatios::new(d1, d2)?;
                let v = normalized_secrecy_rate_an(&r, 50, 10.0, 1.0);
                let zero = if corollary4(&r, 1.0) { 1.0 } else { 0.0 };
                t.push(vec![Some(d1), Some(d2), Some(v), Some(zero)]);
            }
        }
        Ok(t)
    }
}

/// Average, single-draw and approximate secrecy rate with AN over a parameter.
fn approx_an_sweep(ctx: &FigureContext, x: &str, xs: Vec<f64>, make: impl Fn(f64) -> Result<SystemConfig>) -> Table {
    let names = ["sim_avg_rs", "sim_inst_rs", "approx_rs"].map(String::from);
    tabulate(cols(x, names), xs, |v| {
        let c = make(v)?;
        Ok(vec![ctx.mc(&c, AN)?.mean, ctx.single(&c, AN)?, approx_secrecy_rate_an_with(&c, &ctx.quadrature)?])
    })
}

struct Fig10;

impl Figure for Fig10 {
    fn id(&self) -> &'static str {
        "fig10"
    }
    fn about(&self) -> &'static str {
        "secrecy rate with AN and its approximation vs gamma (N_a=32, N_b=16, N_e=40, alpha=20 dB, beta=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let gammas = db_grid(-10, 10, 2).into_iter().map(db_to_linear).collect();
        Ok(approx_an_sweep(ctx, "gamma", gammas, |g| cfg(32, 16, 40, 100.0, 1.0, g)))
    }
}

struct Fig11;

impl Figure for Fig11 {
    fn id(&self) -> &'static str {
        "fig11"
    }
    fn about(&self) -> &'static str {
        "secrecy rate with AN and its approximation vs alpha (N_a=32, N_b=16, N_e=12, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alphas = db_grid(-10, 30, 5).into_iter().map(db_to_linear).collect();
        Ok(approx_an_sweep(ctx, "alpha", alphas, |a| cfg(32, 16, 12, a, 1.0, 1.0)))
    }
}

/// R̄_s with AN approaching C̄_b as β grows.
struct Fig12;

impl Figure for Fig12 {
    fn id(&self) -> &'static str {
        "fig12"
    }
    fn about(&self) -> &'static str {
        "average secrecy rate with AN and Bob's capacity vs beta (N_a=16, N_b=8, N_e=4, alpha=3 dB, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(3.0);
        let names = ["beta", "sim_rs", "analytic_rs", "analytic_cb"].map(String::from);
        Ok(tabulate(cols("beta_db", names), db_grid(-10, 40, 5), |bdb| {
            let beta = db_to_linear(bdb);
            let c = cfg(16, 8, 4, alpha, beta, 1.0)?;
            Ok(vec![beta, ctx.mc(&c, AN)?.mean, avg_rates_an(&c, &ctx.quadrature)?.secrecy(), avg_capacity_bob(&c)?])
        }))
    }
}

/// Average rates without AN versus N_e.
struct Fig13;

impl Figure for Fig13 {
    fn id(&self) -> &'static str {
        "fig13"
    }
    fn about(&self) -> &'static str {
        "average rates without AN vs N_e (N_a=16, N_b=12, alpha=6 dB, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(6.0);
        let names = ["sim_rs", "sim_rs_stderr", "sim_rb", "sim_re", "analytic_rs", "analytic_rb", "analytic_re"];
        Ok(tabulate(cols("n_e", names.map(String::from)), 1u32..=24, |n_e| {
            let c = cfg(16, 12, n_e, alpha, 1.0, 1.0)?;
            let e = ctx.mc(&c, NO_AN)?;
            let a = avg_rates_no_an(&c, NoAnModel::default())?;
            Ok(vec![
                e.mean,
                e.std_error,
                e.per_term_means.rate_bob,
                e.per_term_means.rate_eve,
                a.secrecy(),
                a.bob,
                a.eve,
            ])
        }))
    }
}

/// R_s/N_b without AN versus N_b.
struct Fig14;

impl Figure for Fig14 {
    fn id(&self) -> &'static str {
        "fig14"
    }
    fn about(&self) -> &'static str {
        "R_s/N_b without AN vs N_b (alpha=20 dB, beta=10, gamma=5, delta1=0.5, delta2=1.5)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        Ok(normalized_vs_nb(ctx, 8, &[("d1_0.5_d2_1.5", 0.5, 1.5, 100.0, 10.0, 5.0, NO_AN)]))
    }
}

/// R̄_s without AN versus N_e for N_b ∈ {8, 9, 10}.
struct Fig15;

const FIG15_NB: [u32; 3] = [8, 9, 10];

impl Figure for Fig15 {
    fn id(&self) -> &'static str {
        "fig15"
    }
    fn about(&self) -> &'static str {
        "average secrecy rate without AN vs N_e (N_a=16, alpha=3 dB, beta=1, gamma=1, N_b in {8, 9, 10})"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(3.0);
        let names = FIG15_NB.iter().flat_map(|n| [format!("sim_rs_nb{n}"), format!("analytic_rs_nb{n}")]);
        Ok(tabulate(cols("n_e", names), 1u32..=16, |n_e| {
            let mut out = Vec::new();
            for n_b in FIG15_NB {
                let c = cfg(16, n_b, n_e, alpha, 1.0, 1.0)?;
                out.push(ctx.mc(&c, NO_AN)?.mean);
                out.push(avg_rates_no_an(&c, NoAnModel::default())?.secrecy());
            }
            Ok(out)
        }))
    }
}

/// Secrecy rate without AN and its approximation versus N_b.
struct Fig16;

impl Figure for Fig16 {
    fn id(&self) -> &'static str {
        "fig16"
    }
    fn about(&self) -> &'static str {
        "secrecy rate without AN and its approximation vs N_b (N_a=32, N_e=10, alpha=3 dB, beta=1, gamma=2)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(3.0);
        let names = ["sim_avg_rs", "sim_inst_rs", "approx_rs"].map(String::from);
        Ok(tabulate(cols("n_b", names), 4u32..=30, |n_b| {
            let c = cfg(32, n_b, 10, alpha, 1.0, 2.0)?;
            Ok(vec![ctx.mc(&c, NO_AN)?.mean, ctx.single(&c, NO_AN)?, approx_secrecy_rate_no_an(&c)?])
        }))
    }
}

/// With and without AN versus N_e where only AN keeps a positive rate.
struct Fig17;

impl Figure for Fig17 {
    fn id(&self) -> &'static str {
        "fig17"
    }
    fn about(&self) -> &'static str {
        "average secrecy rate with and without AN vs N_e (N_a=16, N_b=9, alpha=6 dB, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(6.0);
        let names = ["sim_rs_an", "analytic_rs_an", "sim_rs_no_an", "analytic_rs_no_an"].map(String::from);
        Ok(tabulate(cols("n_e", names), 9u32..=22, |n_e| {
            let c = cfg(16, 9, n_e, alpha, 1.0, 1.0)?;
            Ok(vec![
                ctx.mc(&c, AN)?.mean,
                avg_rates_an(&c, &ctx.quadrature)?.secrecy(),
                ctx.mc(&c, NO_AN)?.mean,
                avg_rates_no_an(&c, NoAnModel::default())?.secrecy(),
            ])
        }))
    }
}

/// R_s/N_b without AN versus N_b with N_e = N_b − 1 and N_a = 100.
struct Cor8;

impl Figure for Cor8 {
    fn id(&self) -> &'static str {
        "cor8"
    }
    fn about(&self) -> &'static str {
        "R_s/N_b without AN vs N_b for N_e = N_b - 1 (N_a=100, alpha=15 dB, beta=1, gamma=1)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(15.0);
        let names = ["sim_mean", "sim_median", "asymptotic"].map(String::from);
        let grid: Vec<u32> = (1..).map(|k| 4 * k).take_while(|&n| n <= ctx.nb_cap.min(96)).collect();
        Ok(tabulate(cols("n_b", names), grid, |n_b| {
            let c = cfg(100, n_b, n_b - 1, alpha, 1.0, 1.0)?;
            let (mean, med) = ctx.normalized(&c, NO_AN)?;
            let law = normalized_secrecy_rate_no_an(&AsymptoticRatios::from_config(&c), n_b, alpha, 1.0, 1.0);
            Ok(vec![mean, med, law])
        }))
    }
}

/// With and without AN versus β when Eve has fewer antennas than Bob.
struct Cor11;

impl Figure for Cor11 {
    fn id(&self) -> &'static str {
        "cor11"
    }
    fn about(&self) -> &'static str {
        "average secrecy rate with and without AN vs beta (N_a=16, N_b=8, N_e=2, alpha=6 dB, gamma=2)"
    }
    fn generate(&self, ctx: &FigureContext) -> Result<Table> {
        let alpha = db_to_linear(6.0);
        let names = ["beta", "sim_rs_an", "analytic_rs_an", "sim_rs_no_an", "analytic_rs_no_an"].map(String::from);
        Ok(tabulate(cols("beta_db", names), db_grid(-20, 20, 5), |bdb| {
            let beta = db_to_linear(bdb);
            let c = cfg(16, 8, 2, alpha, beta, 2.0)?;
            Ok(vec![
                beta,
                ctx.mc(&c, AN)?.mean,
                avg_rates_an(&c, &ctx.quadrature)?.secrecy(),
                ctx.mc(&c, NO_AN)?.mean,
                avg_rates_no_an(&c, NoAnModel::default())?.secrecy(),
            ])
        }))
    }
}
