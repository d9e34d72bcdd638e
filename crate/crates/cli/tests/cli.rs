use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirror-drag")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let out = bin(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

/// Parses a CSV body into header and rows of optional numbers.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    assert!(!text.contains('\r'), "CRLF in output");
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|f| if f.is_empty() { None } else { f.parse().ok() }).collect())
        .collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

fn rel(a: f64, e: f64) -> f64 {
    ((a - e) / e).abs()
}

#[test]
fn eval_reports_ratio_at_one_tenth() {
    let v = json(&["eval", "--beta", "0.1"]);
    assert!((v["ratio"].as_f64().unwrap() - 0.808_081).abs() < 1e-6);
    assert_eq!(v["regime"], "relativistic");
    assert!(v.get("f_si_pa").is_none());
}

#[test]
fn eval_at_rest_is_all_zero() {
    let v = json(&["eval", "--beta", "0"]);
    for field in ["f_hat", "ratio", "p_parallel_hat"] {
        assert_eq!(v[field].as_f64().unwrap(), 0.0, "{field}");
    }
    assert_eq!(v["regime"], "nonrelativistic");
}

#[test]
fn eval_si_force_at_cmb_temperature() {
    let v = json(&["eval", "--beta", "0.1", "--temperature-kelvin", "2.725"]);
    assert!(rel(v["f_si_pa"].as_f64().unwrap(), 1.1237e-14) < 1e-4);
    assert!(v["p_si_pa"].as_f64().is_some());
}

#[test]
fn eval_accepts_negative_beta() {
    let v = json(&["eval", "--beta", "-0.5"]);
    assert!((v["f_hat"].as_f64().unwrap() + 64.0 / 9.0).abs() < 1e-14);
}

#[test]
fn eval_with_oracles_fills_kinetic_column() {
    let out = bin(&["eval", "--beta", "0.5", "--format", "csv", "--with-oracles"]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&stdout(&out));
    let f_kin = rows[0][col(&h, "f_kin_hat")].unwrap();
    assert!(rel(f_kin, 64.0 / 9.0 * 3.25 / 4.0) < 1e-8);
}

#[test]
fn sweep_linear_grid() {
    let out = bin(&["sweep", "--beta-start", "0", "--beta-end", "0.9", "--steps", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.ends_with('\n'));
    let (h, rows) = csv(&text);
    assert_eq!(h.join(","), "beta,gamma,f_hat,p_parallel_hat,ratio,f_kin_hat,f_si_pa");
    assert_eq!(rows.len(), 10);
    let f = col(&h, "f_hat");
    assert_eq!(rows[0][f], Some(0.0));
    assert!(rows.windows(2).all(|w| w[1][f] > w[0][f]));
    let half = rows.iter().find(|r| r[0] == Some(0.5)).expect("beta 0.5 row");
    assert!((half[f].unwrap() - 7.111_111).abs() < 1e-6);
    assert!(rows.iter().all(|r| r[col(&h, "f_kin_hat")].is_none() && r[col(&h, "f_si_pa")].is_none()));
    assert_eq!(rows[9][0], Some(0.9));
}

#[test]
fn sweep_log_spacing_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = bin(&[
        "sweep", "--beta-start", "0.9", "--beta-end", "0.999999", "--steps", "6",
        "--spacing", "log_one_minus_beta", "--temperature-kelvin", "300",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let (h, rows) = csv(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 6);
    let betas: Vec<f64> = rows.iter().map(|r| r[0].unwrap()).collect();
    for (i, b) in betas.iter().enumerate() {
        let expected = 1.0 - 10f64.powi(-(i as i32) - 1);
        assert!(((1.0 - b) / (1.0 - expected) - 1.0).abs() < 1e-6, "{betas:?}");
    }
    assert!(rows.iter().all(|r| r[col(&h, "f_si_pa")].is_some()));
}

#[test]
fn eval_matches_sweep_row_bit_for_bit() {
    let sweep = stdout(&bin(&[
        "sweep", "--beta-start", "0", "--beta-end", "0.9", "--steps", "10", "--temperature-kelvin", "2.725",
    ]));
    let row = sweep.lines().find(|l| l.starts_with("0.5,")).unwrap();
    let eval = stdout(&bin(&["eval", "--beta", "0.5", "--temperature-kelvin", "2.725", "--format", "csv"]));
    let eval_row = eval.lines().nth(1).unwrap();
    assert!(eval_row.starts_with(&format!("{row},")), "{eval_row} vs {row}");

    let v = json(&["eval", "--beta", "0.5", "--temperature-kelvin", "2.725"]);
    let fields: Vec<f64> = row.split(',').filter(|f| !f.is_empty()).map(|f| f.parse().unwrap()).collect();
    let from_json = ["beta", "gamma", "f_hat", "p_parallel_hat", "ratio", "f_si_pa"].map(|k| v[k].as_f64().unwrap());
    for (a, b) in fields.iter().zip(from_json) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn trajectory_slow_mirror() {
    let out = bin(&[
        "trajectory", "--beta0", "0.01", "--areal-mass-kg-m2", "1", "--temperature-kelvin", "300", "--tau-end", "0.1",
    ]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&stdout(&out));
    assert_eq!(h.join(","), "tau,t_seconds,beta,gamma");
    let last = rows.last().unwrap();
    assert_eq!(last[0], Some(0.1));
    assert!((last[2].unwrap() - 3.4417e-3).abs() < 1e-7);
}

#[test]
fn trajectory_zero_duration_is_single_row() {
    let out = bin(&[
        "trajectory", "--beta0", "0.3", "--areal-mass-kg-m2", "1", "--temperature-kelvin", "300", "--tau-end", "0",
    ]);
    let (_, rows) = csv(&stdout(&out));
    assert_eq!(rows, vec![vec![Some(0.0), Some(0.0), Some(0.3), Some(1.0 / (1.0f64 - 0.09).sqrt())]]);
}

fn trajectory_csv(mass: &str, dir: &Path) -> Vec<Vec<Option<f64>>> {
    let path = dir.join(format!("traj-{mass}.csv"));
    let out = bin(&[
        "trajectory", "--beta0", "0.6", "--areal-mass-kg-m2", mass, "--temperature-kelvin", "1000",
        "--tau-end", "0.5", "--dt", "0.01", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    csv(&std::fs::read_to_string(path).unwrap()).1
}

#[test]
fn trajectory_mass_only_rescales_time() {
    let dir = tempfile::tempdir().unwrap();
    let light = trajectory_csv("0.25", dir.path());
    let heavy = trajectory_csv("0.5", dir.path());
    assert_eq!(light.len(), 51);
    for (a, b) in light.iter().zip(&heavy) {
        assert_eq!(a[2], b[2]);
        assert_eq!(a[3], b[3]);
        assert_eq!(b[1].unwrap(), 2.0 * a[1].unwrap());
    }
}

#[test]
fn constants_dump() {
    let v = json(&["constants"]);
    assert_eq!(v["c"].as_f64(), Some(299_792_458.0));
    assert_eq!(v["k_b"].as_f64(), Some(1.380_649e-23));
    assert!(rel(v["sigma"].as_f64().unwrap(), 5.670_374_419e-8) < 1e-9);
}

#[test]
fn verify_closed_form_passes() {
    let v = json(&["verify", "--suite", "closedform"]);
    assert_eq!(v["suite"], "closedform");
    assert_eq!(v["overall_pass"], true);
    assert!(v["seed"].is_null());
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "beta", "expected", "actual", "rel_err", "tol", "pass"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
        assert_eq!(c["pass"], true, "{c}");
    }
}

#[test]
fn verify_quadrature_within_tolerance() {
    let v = json(&["verify", "--suite", "quadrature"]);
    let max = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("momentum_density_quad"))
        .map(|c| c["rel_err"].as_f64().unwrap())
        .fold(0.0, f64::max);
    assert!(max <= 1e-8, "max rel_err {max}");
    // The kinetic comparison is recorded per beta but never fails.
    let recorded: Vec<_> =
        v["checks"].as_array().unwrap().iter().filter(|c| c["name"] == "kinetic_over_headline_drag").collect();
    assert_eq!(recorded.len(), 9);
    assert!(recorded.iter().all(|c| c["pass"] == true && c["rel_err"].as_f64().unwrap() > 0.0));
}

#[test]
fn verify_montecarlo_records_seed() {
    let v = json(&["verify", "--suite", "montecarlo", "--seed", "42", "--samples", "1000000"]);
    assert_eq!(v["seed"].as_u64(), Some(42));
    let z = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "mc_momentum_density_z_score").unwrap();
    assert!(z["actual"].as_f64().unwrap().abs() <= 5.0);
    assert_eq!(v["overall_pass"], true);
}

#[test]
fn verify_is_deterministic() {
    let a = stdout(&bin(&["verify", "--suite", "montecarlo", "--seed", "9", "--samples", "200000"]));
    let b = stdout(&bin(&["verify", "--suite", "montecarlo", "--seed", "9", "--samples", "200000"]));
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["eval", "--beta", "1"],
        &["eval", "--beta", "0.9999999999"],
        &["eval", "--beta", "abc"],
        &["eval", "--beta", "0.1", "--temperature-kelvin", "-3"],
        &["eval", "--beta", "0.1", "--format", "xml"],
        &["sweep", "--beta-start", "0.5", "--beta-end", "0.1", "--steps", "5"],
        &["sweep", "--beta-start", "0", "--beta-end", "0.5", "--steps", "1"],
        &["trajectory", "--beta0", "-0.1", "--areal-mass-kg-m2", "1", "--temperature-kelvin", "300", "--tau-end", "1"],
        &["trajectory", "--beta0", "0.1", "--areal-mass-kg-m2", "0", "--temperature-kelvin", "300", "--tau-end", "1"],
        &["trajectory", "--beta0", "0.1", "--areal-mass-kg-m2", "1", "--temperature-kelvin", "300", "--tau-end", "1", "--dt", "0"],
        &["verify", "--suite", "nope"],
        &["verify", "--samples", "0"],
        &["frobnicate"],
        &[],
    ];
    for args in cases {
        let out = bin(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unwritable_output_is_usage_error() {
    let out = bin(&["sweep", "--beta-start", "0", "--beta-end", "0.5", "--steps", "3", "--output", "/nonexistent/dir/x.csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_succeeds() {
    assert_eq!(code(&bin(&["--help"])), 0);
    assert_eq!(code(&bin(&["sweep", "--help"])), 0);
}
