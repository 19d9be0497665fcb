//! `run <config>`: one sweep, one CSV.

use an_wiretap::sweep::{sweep, SweepRow};
use an_wiretap::{ModelRegistry, ModelSettings};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::output::Table;

pub fn registry_for(cfg: &ExperimentConfig) -> ModelRegistry {
    ModelRegistry::standard(ModelSettings {
        trials: cfg.trials,
        seed: cfg.seed,
        workers: cfg.workers,
        quadrature: cfg.quadrature,
        no_an_model: cfg.no_an_model,
    })
}

/// Evaluates the configured sweep. Failed rows are kept, with their message.
pub fn evaluate(cfg: &ExperimentConfig) -> Result<Table> {
    let o = &cfg.outputs;
    let mut models = Vec::new();
    let mut columns = vec!["sweep_value"];
    if o.include_mc {
        models.push("mc");
        columns.extend(["mc_mean", "mc_stderr", "mc_rb", "mc_re"]);
    }
    for (on, name) in
        [(o.include_analytic, "analytic"), (o.include_approx, "approx"), (o.include_asymptotic, "asymptotic")]
    {
        if on {
            models.push(name);
            columns.push(name);
        }
    }
    let registry = registry_for(cfg);
    let rows = sweep(&cfg.system, cfg.sweep.parameter, &cfg.sweep.values, cfg.mode, &registry, &models)?;
    let mut table = Table::new(columns);
    for row in &rows {
        let (cells, error) = flatten(row, &models);
        match error {
            None => table.push(cells),
            Some(e) => table.push_error(cells, e),
        }
    }
    Ok(table)
}

fn flatten(row: &SweepRow, models: &[&str]) -> (Vec<Option<f64>>, Option<String>) {
    let mut cells = vec![Some(row.value)];
    let mut errors = Vec::new();
    for &m in models {
        let r = row.get(m).expect("every requested model has a result");
        let ok = r.as_ref().ok();
        if m == "mc" {
            let est = ok.and_then(|e| e.estimate);
            cells.extend([
                est.map(|e| e.mean),
                est.map(|e| e.std_error),
                est.map(|e| e.per_term_means.rate_bob),
                est.map(|e| e.per_term_means.rate_eve),
            ]);
        } else {
            cells.push(ok.map(|e| e.secrecy));
        }
        if let Err(e) = r {
            errors.push(format!("{m}: {}", e));
        }
    }
    (cells, (!errors.is_empty()).then(|| errors.join("; ")))
}

/// Loads, evaluates and writes. A row-level failure is a numerical error,
/// reported after the CSV (with its error column) has been written.
pub fn run(cfg: &ExperimentConfig) -> Result<Table> {
    let table = evaluate(cfg)?;
    table.save(&cfg.outputs.csv_path)?;
    if let Some(e) = table.first_error() {
        return Err(CliError::Numerical(e.to_owned()));
    }
    Ok(table)
}
