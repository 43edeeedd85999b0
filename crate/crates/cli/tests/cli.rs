use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c1macro")).args(args).output().expect("binary runs")
}

/// Replaces every leaf by its JSON type name and arrays by their first element.
fn skeleton(v: &Value) -> Value {
    match v {
        Value::Null => Value::String("null".into()),
        Value::Bool(_) => Value::String("bool".into()),
        Value::Number(_) => Value::String("number".into()),
        Value::String(_) => Value::String("string".into()),
        Value::Array(a) => Value::Array(a.first().map(skeleton).into_iter().collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), skeleton(v))).collect()),
    }
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn verify_passes_and_report_schema_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.json");
    let o = run(&["verify", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.lines().all(|l| l.starts_with("PASS ")));
    let report = read_json(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["passed"], true);
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(stdout.lines().count(), names.len());
    let golden: Value = serde_json::from_str(include_str!("golden/verify_schema.json")).unwrap();
    assert_eq!(skeleton(&report), golden["skeleton"]);
    assert_eq!(names, golden["checks"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect::<Vec<_>>());
}

#[test]
fn converge_writes_csv_with_orders() {
    let o = run(&["converge", "--operator", "full", "--field", "sin_sin", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "level,h,l2,h1,h2_broken,order_l2,order_h1,order_h2_broken");
    assert_eq!(lines.len(), 4);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert!(first[5..].iter().all(|c| c.is_empty()));
    let last: Vec<&str> = lines[3].split(',').collect();
    // 17 significant digits in scientific notation
    let mantissa = last[2].split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17);
    let order: f64 = last[5].parse().unwrap();
    assert!(order > 2.9, "L2 order {order}");
}

#[test]
fn converge_json_carries_schema_version() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rates.json");
    let o = run(&["converge", "--operator", "bicubic", "--levels", "3", "--mesh", "stretched", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["operator"], "bicubic");
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 3);
    assert!(v["table"]["rows"][0]["orders"][0].is_null());
}

#[test]
fn config_errors_exit_with_code_two() {
    for args in [
        vec!["converge", "--levels", "2"],
        vec!["converge", "--operator", "spline"],
        vec!["converge", "--field", "nope", "--levels", "3"],
        vec!["converge", "--sigma", "up"],
        vec!["shishkin", "--N", "8,12"],
        vec!["shishkin", "--eps", "2"],
        vec!["shishkin", "--lambda0", "-1"],
        vec!["verify", "--bogus"],
        vec!["--threads", "0", "verify"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn shishkin_writes_rows_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("shishkin.csv");
    let o = run(&["shishkin", "--N", "8,16", "--eps", "1e-4,1e-6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = std::fs::read_to_string(&out).unwrap();
    assert!(rows.starts_with("epsilon,N,lambda,l2,h1_weighted,h2_weighted,jump_I,jump_II,jump_III,jump_IV,max_value_jump\n"));
    assert_eq!(rows.lines().count(), 5);
    for line in rows.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[7] < 1e-10 && cols[9] < 1e-10);
    }
    let fits = std::fs::read_to_string(dir.path().join("shishkin_fits.csv")).unwrap();
    assert!(fits.starts_with("quantity,model,epsilon,constant,order,spread\n"));
    assert!(fits.contains("l2,N^-2,"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = |t: &'static str| ["--threads", t, "shishkin", "--N", "8,16", "--eps", "1e-6", "--format", "json"];
    let a = run(&args("1"));
    let b = run(&args("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
