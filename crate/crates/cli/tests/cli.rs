use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use an_wiretap_cli::{ExperimentConfig, FigureContext, FigureRegistry, Scale, Table};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_an-wiretap"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_csv(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let mut rows = vec![r.headers().unwrap().clone()];
    rows.extend(r.records().map(Result::unwrap));
    rows
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("exp.toml");
    std::fs::write(&p, body).unwrap();
    p
}

const MINIMAL: &str = r#"
mode = "an_with_ane"
trials = 200
seed = 1

[system]
n_a = 16
n_b = 8
n_e = 12
alpha_db = 20

[outputs]
csv_path = "res/out.csv"
"#;

#[test]
fn minimal_config_writes_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), MINIMAL);
    let o = run_in(dir.path(), &["run", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_csv(&dir.path().join("res/out.csv"));
    assert_eq!(
        rows[0].iter().collect::<Vec<_>>(),
        ["sweep_value", "mc_mean", "mc_stderr", "mc_rb", "mc_re", "analytic"]
    );
    assert!(rows.len() >= 2);
    let mc: f64 = rows[1][1].parse().unwrap();
    let exact: f64 = rows[1][5].parse().unwrap();
    assert!((mc / exact - 1.0).abs() < 0.05);
}

#[test]
fn shipped_configs_parse() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "toml") {
            ExperimentConfig::load(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        }
    }
}

#[test]
fn antenna_invariant_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &MINIMAL.replace("n_b = 8", "n_b = 16"));
    let o = run_in(dir.path(), &["run", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("N_a > N_b"), "{}", stderr(&o));
    assert!(!dir.path().join("res/out.csv").exists());
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (MINIMAL.replace("seed = 1", "seed = 1\ncolour = \"red\""), "colour"),
        (MINIMAL.replace("alpha_db = 20", "alpha_db = 20\nbeta_db = 1\nbeta = 2"), "system.beta"),
        (format!("{MINIMAL}\n[sweep]\nparameter = \"n_e\"\nvalues = [2, 3.5]\n"), "sweep.values[1]"),
        (format!("{MINIMAL}\n[sweep]\nparameter = \"delta\"\nvalues = [1]\n"), "sweep.parameter"),
        (MINIMAL.replace("trials = 200", "trials = 1"), "trials"),
    ];
    for (body, key) in cases {
        let cfg = write_config(dir.path(), &body);
        let o = run_in(dir.path(), &["run", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{key}");
        assert!(stderr(&o).contains(key), "{key}: {}", stderr(&o));
    }
    let o = run_in(dir.path(), &["run", "no-such-file.toml"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run_in(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dump_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig2.toml", "beta_residual.toml", "no_an.toml", "minimal.toml"] {
        let src = configs().join(name);
        let o = run_in(dir.path(), &["run", src.to_str().unwrap(), "--dump-config"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let dumped = String::from_utf8(o.stdout).unwrap();
        assert!(!dumped.contains("_db"));
        assert_eq!(ExperimentConfig::parse(&dumped).unwrap(), ExperimentConfig::load(&src).unwrap(), "{name}");
    }
}

#[test]
fn fig2_config_matches_golden_analytic_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["run", configs().join("fig2.toml").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_csv(&dir.path().join("out/fig2.csv"));
    let col = rows[0].iter().position(|h| h == "analytic").unwrap();
    let golden = read_csv(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/fig2_analytic.csv"));
    assert_eq!(rows.len(), golden.len());
    for (row, want) in rows[1..].iter().zip(&golden[1..]) {
        assert_eq!(row[0], want[0]);
        let (got, want): (f64, f64) = (row[col].parse().unwrap(), want[1].parse().unwrap());
        assert!((got - want).abs() <= 1e-9 * want.abs(), "n_e {}: {got} vs {want}", &row[0]);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &MINIMAL.replace("seed = 1", "seed = 1\nworkers = 1"));
    assert!(run_in(dir.path(), &["run", cfg.to_str().unwrap()]).status.success());
    let a = std::fs::read(dir.path().join("res/out.csv")).unwrap();
    let cfg = write_config(dir.path(), &MINIMAL.replace("seed = 1", "seed = 1\nworkers = 3"));
    assert!(run_in(dir.path(), &["run", cfg.to_str().unwrap()]).status.success());
    assert_eq!(a, std::fs::read(dir.path().join("res/out.csv")).unwrap());
}

#[test]
fn unknown_figure_exits_one() {
    let o = bin().args(["figure", "fig99"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fig99"));
    let o = bin().args(["figure", "fig2", "--scale", "huge"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn figure_list() {
    let o = bin().arg("figures").output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    for id in 2..=17 {
        assert!(text.contains(&format!("fig{id} ")), "fig{id}");
    }
}

fn quick(id: &str) -> Table {
    let mut ctx = FigureContext::new(Scale::Desk, 1);
    ctx.trials = 200;
    let t = FigureRegistry::standard().get(id).unwrap().generate(&ctx).unwrap();
    assert!(!t.has_errors(), "{id}: {:?}", t.first_error());
    t
}

fn ints(t: &Table, name: &str) -> Vec<u32> {
    t.column(name).unwrap().iter().map(|v| v.unwrap() as u32).collect()
}

fn first_zero(xs: &[u32], ys: &[Option<f64>]) -> Option<u32> {
    xs.iter().zip(ys).find(|(_, y)| y.unwrap() <= 1e-6).map(|(x, _)| *x)
}

#[test]
fn fig15_no_an_rate_vanishes_at_equal_arrays() {
    let t = quick("fig15");
    let n_e = ints(&t, "n_e");
    for n_b in [8, 9, 10] {
        let col = t.column(&format!("analytic_rs_nb{n_b}")).unwrap();
        assert_eq!(first_zero(&n_e, &col), Some(n_b), "n_b = {n_b}");
        assert!(col.iter().zip(&n_e).all(|(v, &e)| (e >= n_b) == (v.unwrap() == 0.0)));
    }
}

#[test]
fn fig17_only_an_keeps_a_positive_rate() {
    let t = quick("fig17");
    assert_eq!(ints(&t, "n_e"), (9..=22).collect::<Vec<_>>());
    assert!(t.column("analytic_rs_no_an").unwrap().iter().all(|v| v.unwrap() == 0.0));
    assert!(t.column("analytic_rs_an").unwrap().iter().all(|v| v.unwrap() > 0.0));
}

#[test]
fn fig8_reports_first_zero_per_array() {
    let t = quick("fig8");
    let n_e = ints(&t, "n_e");
    let zeros: Vec<_> =
        [14, 15, 16].iter().map(|n| first_zero(&n_e, &t.column(&format!("analytic_rs_na{n}")).unwrap())).collect();
    // With gamma = 0.5 the closed form crosses zero well before 2 N_a - N_b.
    assert_eq!(zeros, [Some(16), Some(17), Some(19)]);
}

#[test]
fn figure_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f9/fig9.csv");
    let o = bin().args(["figure", "fig9", "--out", out.to_str().unwrap(), "--seed", "5"]).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_csv(&out);
    assert_eq!(rows[0].iter().collect::<Vec<_>>(), ["delta1", "delta2", "asymptotic", "zero_region"]);
    assert_eq!(rows.len(), 1 + 40 * 30);
}
