use std::process::{Command, Output};

fn multdep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multdep")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = multdep(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// CSV rows as maps from header to cell.
fn rows(csv: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = csv.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    lines.map(|l| header.iter().cloned().zip(l.split(',').map(String::from)).collect()).collect()
}

fn cell<'a>(row: &'a [(String, String)], key: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("no column {key}")).1
}

#[test]
fn count_rational_pairs() {
    let out = stdout(&["count", "--field", "Q", "--n", "2", "--heights", "10,100"]);
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert_eq!(cell(&r[0], "total"), "144");
    assert_eq!(cell(&r[0], "s0"), "76");
    assert_eq!(cell(&r[0], "s1"), "68");
    assert_eq!(cell(&r[0], "undecided"), "0");
    for row in &r {
        let total: u128 = cell(row, "total").parse().unwrap();
        let s: u128 = cell(row, "s0").parse::<u128>().unwrap() + cell(row, "s1").parse::<u128>().unwrap();
        assert_eq!(total, s);
    }
}

#[test]
fn shards_leave_output_unchanged() {
    let strip = |s: String| rows(&s).into_iter().map(|r| r.into_iter().filter(|(k, _)| k != "elapsed_s").collect::<Vec<_>>()).collect::<Vec<_>>();
    let args = ["count", "--field", "Q(i)", "--n", "3", "--heights", "2,3"];
    let one = strip(stdout(&args));
    let three = strip(stdout(&[&args[..], &["--shards", "3"]].concat()));
    assert_eq!(one, three);
}

#[test]
fn out_writes_csv_json_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    let p = path.to_str().unwrap();
    let out = stdout(&["count", "--field", "Q", "--n", "3", "--heights", "5,10", "--out", p]);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rows(&csv).len(), 2);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("counts.json")).unwrap()).unwrap();
    for key in ["config", "records", "wall_time", "version"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["records"].as_array().unwrap().len(), 2);
    let plot = std::fs::read_to_string(dir.path().join("counts.plot.dat")).unwrap();
    assert_eq!(plot.lines().count(), 2);
}

#[test]
fn verify_tuple_certificate() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["verify-tuple", "6", "5", "10", "3"])).unwrap();
    assert_eq!(v["dependent"], true);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["relation"], serde_json::json!([1, 1, -1, -1]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["verify-tuple", "2", "3", "-5/7"])).unwrap();
    assert_eq!(v["dependent"], false);
}

#[test]
fn small_commands() {
    let psi = rows(&stdout(&["psi", "--x", "100", "--y", "5"]));
    assert_eq!(cell(&psi[0], "psi"), "34");
    let pc = rows(&stdout(&["product-count", "--k", "2", "--q", "2", "--T", "4"]));
    assert_eq!(cell(&pc[0], "N"), "6");
    let fc = rows(&stdout(&["fixed-coeffs", "--field", "Q", "--u", "2", "--v", "-3", "--heights", "3"]));
    assert_eq!(cell(&fc[0], "count"), "1");
    let en = rows(&stdout(&["enumerate", "--field", "Q", "--heights", "2"]));
    assert_eq!(en.len(), 4);
    let lb = rows(&stdout(&["lowerbound", "--n", "4", "--height", "100"]));
    assert_eq!(cell(&lb[0], "T"), "10");
}

#[test]
fn constants_for_rationals_and_degree_one_agree() {
    let q: serde_json::Value = serde_json::from_str(&stdout(&["constants", "--field", "Q", "--n", "3"])).unwrap();
    let d: serde_json::Value = serde_json::from_str(&stdout(&["constants", "--degree", "1", "--n", "3"])).unwrap();
    let mid = |v: &serde_json::Value, k: &str| v[k]["mid"].as_f64().unwrap_or_else(|| panic!("{k} in {v}"));
    assert!((mid(&q, "C2") - mid(&d, "C6")).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| multdep(args).status.code().unwrap();
    assert_eq!(code(&["count", "--field", "Q", "--n", "3", "--heights", "200", "--budget", "10"]), 3);
    assert_eq!(code(&["count", "--field", "Q(sqrt(4))", "--n", "2", "--heights", "3"]), 2);
    assert_eq!(code(&["count", "--field", "Q", "--n", "2", "--heights", "3", "--precision", "8"]), 2);
    assert_eq!(code(&["count", "--field", "Q", "--n", "2", "--heights", "3", "--out", "/nonexistent/dir/x.csv"]), 5);
    assert_ne!(code(&["count", "--n", "2"]), 0);
}
