use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn blaschke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blaschke"))
        .args(args)
        .env_remove("BLAS_EXT_TOL")
        .output()
        .expect("binary runs")
}

fn blaschke_env(args: &[&str], tol: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blaschke"))
        .args(args)
        .env("BLAS_EXT_TOL", tol)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn profile_values(text: &str) -> Vec<f64> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect()
}

fn write_product(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn extremal_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = blaschke(&["extremal", "--n", "2", "--nu", "1", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["numerator"], serde_json::json!(["1", "3", "6"]));
    assert_eq!(report["denominator"], serde_json::json!(["6", "3", "1"]));
    assert!((report["extrema"]["M"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((report["extrema"]["m"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let spec: serde_json::Value = serde_json::from_str(&fs::read_to_string(out_dir.join("spec.json")).unwrap()).unwrap();
    assert_eq!(spec["nu"], "1");
    assert_eq!(spec["kappa"], "1/6");
    assert_eq!(spec["kind"], "first");
    assert_eq!(spec["n"], 2);

    let zeros = fs::read_to_string(out_dir.join("zeros.csv")).unwrap();
    assert_eq!(zeros.lines().next(), Some("re,im"));
    assert_eq!(zeros.lines().count(), 3);

    let profile = fs::read_to_string(out_dir.join("profile.csv")).unwrap();
    assert_eq!(profile.lines().next(), Some("t,deriv_modulus"));
    assert_eq!(profile.lines().count(), 8193);
    let first_t: f64 = profile.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert_eq!(first_t, -std::f64::consts::PI);

    let product = fs::read_to_string(out_dir.join("product.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&product).unwrap();
    assert_eq!(parsed["degree"], 2);
}

#[test]
fn outputs_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let out = blaschke(&["extremal", "--n", "5", "--nu", "-1/4", "--out", d.to_str().unwrap()]);
        assert!(out.status.success());
    }
    for file in ["product.json", "spec.json", "zeros.csv", "profile.csv"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file}");
    }
}

#[test]
fn degree_fifteen_examples() {
    for (nu, max, min) in [("5", 20.0, 2.5), ("-1/4", 20.0, 14.75)] {
        let out = blaschke(&["extremal", "--n", "15", "--nu", nu]);
        assert!(out.status.success(), "{}", stderr(&out));
        let r = json(&out);
        assert!((r["extrema"]["M"].as_f64().unwrap() - max).abs() < 1e-6);
        assert!((r["extrema"]["m"].as_f64().unwrap() - min).abs() < 1e-6);
    }
}

#[test]
fn monomial_profile_is_constant() {
    let out = blaschke(&["extremal", "--n", "2", "--nu", "0", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("t,deriv_modulus"));
    assert!(profile_values(&text).iter().all(|&v| v == 2.0));
}

#[test]
fn decimal_nu_is_read_exactly() {
    let out = blaschke(&["extremal", "--n", "3", "--nu", "0.1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["spec"]["nu"], "1/10");
}

#[test]
fn bad_parameters_exit_one() {
    for args in [
        vec!["extremal", "--n", "2", "--nu", "-1"],
        vec!["extremal", "--n", "2", "--nu", "abc"],
        vec!["extremal", "--n", "2"],
        vec!["--samples", "1000", "extremal", "--n", "2", "--nu", "1"],
        vec!["frobnicate"],
    ] {
        let out = blaschke(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn prescribe_cases() {
    let out = blaschke(&["prescribe", "--n", "3", "--m", "2.9", "--M", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("2.75"), "{}", stderr(&out));

    let out = blaschke(&["prescribe", "--n", "2", "--m", "1", "--M", "3"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["case"], 2);
    assert_eq!(r["numerator"], serde_json::json!(["1", "3", "6"]));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.json");
    let out = blaschke(&["prescribe", "--n", "3", "--m", "1.6", "--M", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["case"], 4);
    assert!((r["achieved"]["M"].as_f64().unwrap() - 4.0).abs() < 1e-4);
    assert!((r["achieved"]["m"].as_f64().unwrap() - 1.6).abs() < 1e-4);

    // the written product re-scans to the same extrema
    let scan = blaschke(&["scan", path.to_str().unwrap(), "--out", dir.path().join("p.csv").to_str().unwrap()]);
    assert!(scan.status.success());
    let summary = stdout(&scan);
    let values: Vec<f64> = summary.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((values[0] - 4.0).abs() < 1e-4 && (values[1] - 1.6).abs() < 1e-4);
}

#[test]
fn scan_reports_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_product(
        dir.path(),
        "cube.json",
        r#"{"degree": 3, "alpha": {"re": 1, "im": 0}, "zeros": [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}]}"#,
    );
    let out = blaschke(&["scan", &cube]);
    assert!(out.status.success());
    assert!(profile_values(&stdout(&out)).iter().all(|&v| v == 3.0));
    assert_eq!(stderr(&out), "M,m,mean\n3.0,3.0,3.0\n");

    let s = 15f64.sqrt() / 12.0;
    let example = write_product(
        dir.path(),
        "example.json",
        &format!(
            r#"{{"degree": 2, "alpha": {{"re": 1, "im": 0}}, "zeros": [{{"re": -0.25, "im": {s:?}}}, {{"re": -0.25, "im": {:?}}}]}}"#,
            -s
        ),
    );
    let out = blaschke(&["scan", &example, "--out", dir.path().join("ex.csv").to_str().unwrap()]);
    let values: Vec<f64> = stdout(&out).lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((values[0] - 3.0).abs() < 1e-9 && (values[1] - 1.0).abs() < 1e-9 && (values[2] - 2.0).abs() < 1e-9);

    let symmetric = write_product(
        dir.path(),
        "symmetric.json",
        r#"{"degree": 2, "alpha": {"re": 1, "im": 0}, "zeros": [{"re": 0, "im": 0.5}, {"re": 0, "im": -0.5}]}"#,
    );
    let out = blaschke(&["scan", &symmetric, "--out", dir.path().join("sym.csv").to_str().unwrap()]);
    let values: Vec<f64> = stdout(&out).lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((values[0] - 10.0 / 3.0).abs() < 1e-9 && (values[1] - 1.2).abs() < 1e-9);

    let broken = write_product(dir.path(), "broken.json", "{\"degree\": 2,");
    assert_eq!(blaschke(&["scan", &broken]).status.code(), Some(1));
    let outside = write_product(
        dir.path(),
        "outside.json",
        r#"{"degree": 1, "alpha": {"re": 1, "im": 0}, "zeros": [{"re": 1.5, "im": 0}]}"#,
    );
    assert_eq!(blaschke(&["scan", &outside]).status.code(), Some(1));
    assert_eq!(blaschke(&["scan", "/nonexistent/product.json"]).status.code(), Some(1));
}

#[test]
fn preimages_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    let run_dir = dir.path().join("run");
    assert!(blaschke(&["extremal", "--n", "2", "--nu", "1", "--out", run_dir.to_str().unwrap()])
        .status
        .success());
    let product = run_dir.join("product.json");
    let product = product.to_str().unwrap();

    let out = blaschke(&["preimages", product, "--lifted"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["points"].as_array().unwrap().len(), 3);
    assert!((r["residue_sum"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let out = blaschke(&["preimages", product, "--lambda-arg", "-1.2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("re,im,deriv_modulus"));
    assert_eq!(stdout(&out).lines().count(), 3);

    let out = blaschke(&["classify", product]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["extremal"]["kind"], "first");
    assert_eq!(r["lower"]["inequality"], "boundary");
    assert_eq!(r["lower"]["homeomorphism"], true);
    assert_eq!(r["lower"]["diffeomorphism"], false);
}

#[test]
fn verify_exit_codes() {
    let out = blaschke(&["verify", "--suite", "identities"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
    assert!(!stdout(&out).contains("FAIL"));

    let out = blaschke(&["verify", "--suite", "inequalities", "--seed", "7"]);
    assert!(out.status.success(), "{}", stdout(&out));

    let out = blaschke_env(&["verify", "--suite", "inequalities"], "mean=1e-300");
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stderr(&out).contains("circle mean"));

    let out = blaschke_env(&["verify", "--suite", "identities"], "circle");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn numeric_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let run_dir = dir.path().join("run");
    assert!(blaschke(&["extremal", "--n", "6", "--nu", "1/3", "--out", run_dir.to_str().unwrap()])
        .status
        .success());
    let product = run_dir.join("product.json");
    let out = blaschke_env(&["preimages", product.to_str().unwrap()], "root_residual=1e-300");
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("root finder"));
}
