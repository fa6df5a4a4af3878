use std::process::{Command, Output};

fn xop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xop")).args(args).output().expect("spawn xop")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn gen_xm_rows() {
    let o =
        xop(&["gen", "xm-jacobi", "--alpha", "5/4", "--beta", "1/2", "--m", "2", "--n", "2..6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["family"], "xm-jacobi");
    assert_eq!(v["params"]["alpha"], "5/4");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let eig: Vec<&str> = rows.iter().map(|r| r["eigenvalue"].as_str().unwrap()).collect();
    assert_eq!(eig, ["0", "-15/4", "-19/2", "-69/4", "-27"]);
    // binom(alpha + n - m, n) binom(n, m) at n = 2, 3
    assert_eq!(rows[0]["value_at_1"], "5/32");
    assert_eq!(rows[1]["value_at_1"], "45/128");
    assert!(v.get("diagnosis").is_none());
}

#[test]
fn gen_legendre() {
    let o = xop(&["gen", "classical-jacobi", "--alpha", "0", "--beta", "0", "--n", "0..3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let coeffs: Vec<Vec<String>> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect())
        .collect();
    assert_eq!(coeffs, [vec!["1"], vec!["0", "1"], vec!["-1/2", "0", "3/2"], vec!["0", "-3/2", "0", "5/2"]]);
    let eig: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["eigenvalue"].as_str().unwrap()).collect();
    assert_eq!(eig, ["0", "-2", "-6", "-12"]);
}

#[test]
fn gen_csv_and_determinism() {
    let o = xop(&["gen", "x1-laguerre", "--k", "2", "--n", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,eigenvalue,value_at_1,c0,c1\n1,0,-4,-3,-1\n");
    let args = ["gen", "x1-jacobi", "--alpha", "1", "--beta", "2", "--n", "1..6", "--format", "csv"];
    let a = xop(&args);
    assert_eq!(a.stdout, xop(&args).stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("n,eigenvalue,value_at_1,c0,c1,c2,c3,c4,c5,c6"));
    assert!(lines[1].starts_with("1,0,1,5/4,-1/4"));
}

#[test]
fn gen_degenerate_reports_diagnosis() {
    let o = xop(&["gen", "xm-jacobi", "--alpha", "3/2", "--beta", "1/2", "--m", "2", "--n", "2..3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["diagnosis"].as_str().unwrap().starts_with("degenerate-degree"));
    // 3/8 P_0^{(3/2,1/2)}
    assert_eq!(v["rows"][0]["coeffs"], serde_json::json!(["3/8"]));
}

#[test]
fn usage_errors_exit_2() {
    let o = xop(&["gen", "x1-jacobi", "--alpha", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("alpha = beta"));
    assert_eq!(xop(&["gen", "xm-jacobi", "--alpha", "x", "--beta", "0", "--m", "1"]).status.code(), Some(2));
    assert_eq!(
        xop(&["gen", "xm-jacobi", "--alpha", "1", "--beta", "1", "--m", "2", "--n", "0..3"]).status.code(),
        Some(2)
    );
    assert_eq!(xop(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn admissibility_reports() {
    let o = xop(&["admissible", "--alpha", "1/3", "--beta", "-1/2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: admissible"));

    let o = xop(&["admissible", "--alpha", "3/2", "--beta", "1/2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("degenerate"));
    assert!(stdout(&o).contains("alpha - beta - m + 1 = 0"));

    let o = xop(&["admissible", "--alpha", "0", "--beta", "1", "--m", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert!(v["reasons"][0].as_str().unwrap().contains("alpha = 0 lies in {0, ..., m-1}"));

    let o = xop(&["admissible", "--alpha=0.5", "--beta=0.5", "--m=3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("interior-zero"));
}

#[test]
fn verify_suites() {
    let o = xop(&["verify", "factorizations", "--alpha", "5/4", "--beta", "1/2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("5/5 checks passed"));

    let o = xop(&["verify", "flags", "--example", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
    assert_eq!(v["passed"], true);

    let o = xop(&["verify", "norms", "--alpha", "1/3", "--beta", "-1/2", "--m", "2", "--count", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = xop(&["verify", "identities", "--family", "x1-jacobi", "--alpha", "1", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = xop(&["verify", "orthogonality", "--alpha", "1/2", "--beta", "1/2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn samples() {
    let o = xop(&[
        "sample",
        "xm-jacobi",
        "--alpha",
        "1/3",
        "--beta",
        "-1/2",
        "--m",
        "2",
        "--what",
        "weight",
        "--range",
        "0..0",
        "--points",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 288.0 * 288.0 / 1681.0).abs() < 1e-12);

    let o = xop(&["sample", "x1-laguerre", "--k", "2", "--what", "weight", "--range", "2..2", "--points", "1"]);
    let v: f64 = stdout(&o).lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - (-2.0f64).exp() / 4.0).abs() < 1e-15);

    let o = xop(&[
        "sample",
        "xm-jacobi",
        "--alpha",
        "5/4",
        "--beta",
        "1/2",
        "--m",
        "2",
        "--what",
        "poly",
        "--n",
        "3",
        "--range",
        "-1..1",
        "--points",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(last, format!("1,{}", 45.0 / 128.0));
    assert_eq!(text.lines().count(), 6);

    let o = xop(&[
        "sample",
        "xm-jacobi",
        "--alpha",
        "5/4",
        "--beta",
        "1/2",
        "--m",
        "2",
        "--what",
        "weight",
        "--range",
        "0..2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn writes_out_file() {
    let dir = std::env::temp_dir().join(format!("xop-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let o = xop(&["gen", "x1-laguerre", "--k", "2", "--n", "1..2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}
