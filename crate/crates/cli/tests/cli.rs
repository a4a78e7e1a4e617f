use std::f64::consts::PI;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_well-entropy"));
    c.env_remove("WELL_ENTROPY_MAX_PERIODS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// CSV body as rows of fields (header checked and dropped).
fn csv(text: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(header));
    lines.map(|l| l.split(',').map(String::from).collect()).collect()
}

fn field(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap_or_else(|_| panic!("field {i} of {row:?} is not numeric"))
}

const RECORD: &str = "kind,n,alpha,beta,value,err,route";
const REPORT: &str = "kind,n,alpha,beta,left,right,slack,saturated,skipped";

#[test]
fn dirichlet_ground_momentum_at_half_order() {
    let o = run(&["entropy", "--kind", "dirichlet", "--n", "1", "--space", "momentum", "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o), RECORD);
    assert_eq!(rows.len(), 1);
    assert!((field(&rows[0], 4) - 2.8603).abs() < 1e-4);
    assert!(field(&rows[0], 5) < 1e-8);
    assert_eq!(rows[0][6], "quadrature");
    // 17 significant digits
    assert_eq!(rows[0][4].split('e').next().unwrap().len(), 18);
}

#[test]
fn neumann_position_entropy_is_ln_width() {
    let o = run(&["entropy", "--kind", "neumann", "--n", "1", "--space", "position", "--alpha", "7.3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o), RECORD);
    assert!(field(&rows[0], 4).abs() < 1e-14);
    let o = run(&["entropy", "--kind", "neumann", "--n", "1", "--space", "position", "--alpha", "7.3", "--width", "2.5"]);
    let rows = csv(&stdout(&o), RECORD);
    assert!((field(&rows[0], 4) - 2.5f64.ln()).abs() < 1e-14);
}

#[test]
fn below_threshold_is_a_domain_error() {
    let o = run(&["entropy", "--kind", "neumann", "--n", "2", "--space", "momentum", "--alpha", "0.4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("alpha_TH = 0.5"), "{err}");
}

#[test]
fn malformed_flags_are_usage_errors() {
    for args in [
        vec!["entropy", "--kind", "dirichlet", "--n", "0", "--space", "momentum", "--alpha", "1"],
        vec!["entropy", "--kind", "robin", "--n", "1", "--space", "momentum", "--alpha", "1"],
        vec!["entropy", "--kind", "dirichlet", "--n", "1", "--space", "momentum", "--alpha", "nan"],
        vec!["sweep", "--kind", "dirichlet", "--n", "1", "--space", "momentum", "--start", "2", "--stop", "1", "--count", "3"],
        vec!["sweep", "--kind", "dirichlet", "--n", "1", "--alpha", "1"],
        vec!["verify", "--criterion", "14"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn infinite_order_uses_the_sup_limit() {
    let o = run(&["entropy", "--kind", "dirichlet", "--n", "1", "--space", "momentum", "--alpha", "inf", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["alpha"], "inf");
    assert_eq!(v["route"], "sup_limit");
    let want = (PI.powi(3) / 4.0).ln();
    assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-10);
}

#[test]
fn measures_agree_with_each_other() {
    let get = |measure: &str, alpha: &str| {
        let o = run(&["entropy", "--kind", "dirichlet", "--n", "2", "--space", "momentum", "--measure", measure, "--alpha", alpha]);
        assert_eq!(o.status.code(), Some(0), "{measure}");
        field(&csv(&stdout(&o), RECORD)[0], 4)
    };
    let r2 = get("renyi", "2");
    assert!(((-r2).exp() - get("onicescu", "2")).abs() < 1e-12);
    assert!((1.0 - (-r2).exp() - get("tsallis", "2")).abs() < 1e-12);
    assert!((get("shannon", "1") - get("renyi", "1")).abs() < 1e-9);
}

#[test]
fn momentum_sweep_marks_skipped_points_and_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let args = [
        "sweep", "--kind", "dirichlet", "--n", "1,2,3,4,5", "--space", "momentum", "--start", "0.2", "--stop", "20",
        "--count", "12", "--spacing", "log", "--out",
    ];
    let o = bin().args(args).arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = csv(&text, RECORD);
    assert_eq!(rows.len(), 60);
    for n in 1..=5 {
        let col: Vec<_> = rows.iter().filter(|r| r[1] == n.to_string()).collect();
        assert!(col[0][4].is_empty() && col[0][5].is_empty());
        assert!(col[0][6].starts_with("skipped: below threshold"));
        let vals: Vec<f64> = col[1..].iter().map(|r| field(r, 4)).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]), "n={n}: {vals:?}");
        // close to the threshold the entropy is already large
        assert!(vals[0] > 2.9);
    }
    // bit-identical on rerun
    let again = dir.path().join("e.csv");
    bin().args(args).arg(&again).output().unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn position_sweep_follows_the_level_independent_curve() {
    let o = run(&["sweep", "--kind", "neumann", "--n", "2", "--space", "position", "--start", "0", "--stop", "5", "--count", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o), RECORD);
    let vals: Vec<f64> = rows.iter().map(|r| field(r, 4)).collect();
    assert!(vals[0].abs() < 1e-14);
    assert!(vals.windows(2).all(|w| w[0] > w[1]));
    assert!(vals[10] > -(2f64.ln()));
}

#[test]
fn neumann_sum_sweep_grows_and_skips_infinity() {
    let o = run(&["sweep", "--kind", "neumann", "--n", "1,2,3,4,5", "--relation", "renyi", "--alpha", "1,5,20,50,inf"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv(&stdout(&o), RECORD);
    for n in 1..=5 {
        let col: Vec<_> = rows.iter().filter(|r| r[1] == n.to_string()).collect();
        let vals: Vec<f64> = col[..4].iter().map(|r| field(r, 4)).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0] + 0.3), "n={n}: {vals:?}");
        assert!(col[4][6].starts_with("skipped"));
    }
}

#[test]
fn sobolev_sides_at_order_one() {
    let o = run(&["uncertainty", "--relation", "sobolev", "--kind", "neumann", "--n", "1", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o), REPORT);
    let want = PI.powf(-0.25);
    assert!((field(&rows[0], 4) - want).abs() < 1e-8);
    assert!((field(&rows[0], 5) - want).abs() < 1e-8);
    assert_eq!(rows[0][7], "true");
}

#[test]
fn renyi_relation_reports() {
    let o = run(&["uncertainty", "--relation", "renyi", "--kind", "dirichlet", "--n", "1", "--alpha", "0.5001,1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o), REPORT);
    let slack = field(&rows[0], 6);
    assert!((0.0..=1e-3).contains(&slack), "{slack}");
    assert!((field(&rows[1], 5) - (1.0 + PI.ln())).abs() < 1e-12);
    let o = run(&["uncertainty", "--relation", "renyi", "--kind", "neumann", "--n", "1", "--alpha", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["saturated"], false);
    assert!((v["beta"].as_f64().unwrap() - 0.6).abs() < 1e-15);
}

#[test]
fn period_budget_from_environment() {
    let o = bin()
        .env("WELL_ENTROPY_MAX_PERIODS", "3")
        .args(["entropy", "--kind", "dirichlet", "--n", "1", "--space", "momentum", "--alpha", "0.3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin()
        .env("WELL_ENTROPY_MAX_PERIODS", "many")
        .args(["entropy", "--kind", "dirichlet", "--n", "1", "--space", "momentum", "--alpha", "0.3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    let o = bin()
        .args(["sweep", "--kind", "dirichlet", "--n", "1", "--space", "position", "--alpha", "1", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(74));
}

#[test]
fn verify_subset_passes_and_strict_scale_names_failures() {
    let o = run(&["verify", "--criterion", "1,3,9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion")).count(), 3);
    let o = run(&["verify", "--criterion", "3", "--tolerance-scale", "1e-8"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("criterion 03 FAIL"));
    assert!(text.lines().any(|l| l.trim_start().starts_with("FAIL")));
}

#[test]
fn verify_full_table() {
    let o = run(&["verify"]);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().filter(|l| l.starts_with("criterion")).collect();
    assert_eq!(lines.len(), 13, "{text}");
    // the only red item is the Neumann slope, whose reference value does not
    // match the variance of ln γ; everything else must pass
    let failed: Vec<_> = lines.iter().filter(|l| l.contains(" FAIL ")).collect();
    assert!(failed.iter().all(|l| l.starts_with("criterion 08")), "{text}");
    let bad: Vec<_> = text.lines().filter(|l| l.trim_start().starts_with("FAIL")).collect();
    assert!(bad.iter().all(|l| l.contains("slope at alpha = 1")), "{text}");
    assert_eq!(o.status.code(), Some(if failed.is_empty() { 0 } else { 1 }));
}
