use std::path::Path;
use std::process::{Command, Output};

fn gq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gq")).args(args).output().expect("gq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn field_table_contains_worked_product() {
    let o = gq(&["field", "table", "--modulus", "11"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split_whitespace().skip(2).collect();
    let row = text.lines().find(|l| l.trim_start().starts_with("a+a^2 |")).unwrap();
    let cells: Vec<&str> = row.split('|').nth(1).unwrap().split_whitespace().collect();
    let col = header.iter().position(|&h| h == "1+a+a^2").unwrap();
    assert_eq!(cells[col], "a^2");
}

#[test]
fn qrs_params_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let o = gq(&["code", "qrs", "--q", "8", "--n", "8", "--k1", "2", "--k2", "5", "--out", p(&q)]);
    assert!(o.status.success());
    let v = json(&gq(&["code", "params", "--in", p(&q)]));
    assert_eq!(v["k"], 3);
    assert_eq!(v["d_x"], 4);
    assert_eq!(v["d_z"], 3);

    let b = json(&gq(&["code", "to-qubits", "--in", p(&q)]));
    assert_eq!(b["hx"].as_array().unwrap().len(), 6);
    assert_eq!(b["hz"].as_array().unwrap().len(), 9);
    assert_eq!(b["hx"][0].as_array().unwrap().len(), 24);
    assert!(b["qudit_code"]["qrs"].is_object());

    let a = gq(&["code", "export", "--in", p(&q), "--which", "hz", "--format", "alist"]);
    assert!(a.status.success());
    assert!(stdout(&a).starts_with("24 9\n"));
}

#[test]
fn gates_level_reports_json() {
    let v = json(&gq(&["gates", "level", "--gate", "ccz", "--q", "4", "--gamma", "1", "--max-level", "4"]));
    assert_eq!(v["level"], 3);
    let v = json(&gq(&["gates", "level", "--gate", "ccz", "--q", "2", "--max-level", "2"]));
    assert_eq!(v["level"], "above max");
    assert!(v["witness"].is_string());
}

#[test]
fn sim_measure_and_cat_demo() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    std::fs::write(&t, r#"{"q":4,"modulus":7,"xrows":[[1,1]],"zrows":[[1,1]],"xsyn":[2],"zsyn":[3]}"#).unwrap();
    let v = json(&gq(&["sim", "measure", "--in", p(&t), "--pauli", "+|x:[1,1]|z:[0,0]"]));
    assert_eq!(v["deterministic"], true);
    assert_eq!(v["outcome"], 2);
    let v = json(&gq(&["sim", "cat-demo", "--q", "8", "--gammas", "1,2,3,4", "--eta", "5"]));
    assert_eq!(v["recovered"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(gq(&["nonsense"]).status.code(), Some(2));
    assert_eq!(gq(&["field", "info", "--modulus", "15"]).status.code(), Some(2));
    assert_eq!(gq(&["gates", "level", "--gate", "mult", "--q", "4", "--delta", "0"]).status.code(), Some(2));
    assert_eq!(gq(&["basis", "selfdual", "--q", "16"]).status.code(), Some(0));
}

#[test]
fn verify_is_byte_identical() {
    let a = gq(&["verify", "all", "--seed", "0"]);
    let b = gq(&["verify", "all", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
