use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sgflow(args: &[&str], stdin: &str) -> Output {
    sgflow_env(args, stdin, &[])
}

fn sgflow_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sgflow"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn make(family: &str, param: usize) -> String {
    let out = sgflow(
        &["make", "--family", family, "--param", &param.to_string()],
        "",
    );
    assert!(out.status.success());
    stdout(&out)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sgflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn h_2_has_flow_number_five() {
    let out = sgflow(&["flow-number"], &make("H_t", 2));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["flow_number"], 5);
}

#[test]
fn petersen_integer_spectrum() {
    let out = sgflow(&["spectrum", "--integer"], &make("Petersen", 0));
    assert_eq!(out.status.code(), Some(0));
    let values: Vec<String> = json(&out)["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(values, ["3/1", "4/1", "5/1", "6/1"]);
}

#[test]
fn tampered_certificate_is_rejected() {
    let out = sgflow(&["construct", "--recipe", "h-t", "--param", "2"], "");
    assert!(out.status.success());
    let mut doc = json(&out);
    let good = temp_file("good.json", &doc.to_string());
    assert_eq!(
        sgflow(&["verify", good.to_str().unwrap()], "")
            .status
            .code(),
        Some(0)
    );

    doc["values"][3] = Value::String("2/1".into());
    let bad = temp_file("bad.json", &doc.to_string());
    let out = sgflow(&["verify", bad.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["valid"], false);
    assert!(
        report["violation"].as_str().unwrap().contains("vertex"),
        "{report}"
    );
}

#[test]
fn printed_certificates_reverify() {
    let k4 = temp_file("k4.sg", &make("K_n", 4));
    let k33 = temp_file("k33.sg", &make("K_nn", 3));
    let petersen = temp_file("p.sg", &make("Petersen", 0));
    let runs: Vec<Vec<&str>> = vec![
        vec!["construct", "--recipe", "three-flow", k4.to_str().unwrap()],
        vec![
            "construct",
            "--recipe",
            "kotzig-six-flow",
            k4.to_str().unwrap(),
        ],
        vec![
            "construct",
            "--recipe",
            "bipartite-four-flow",
            k33.to_str().unwrap(),
        ],
        vec![
            "construct",
            "--recipe",
            "oddness-four-flow",
            petersen.to_str().unwrap(),
        ],
        vec![
            "construct",
            "--recipe",
            "double",
            "--edges",
            "0,7",
            petersen.to_str().unwrap(),
        ],
        vec!["construct", "--recipe", "h-t", "--param", "3", "--circular"],
        vec!["construct", "--recipe", "g-t", "--param", "2"],
        vec!["circular-flow-number", "--exact", k4.to_str().unwrap()],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = sgflow(args, "");
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut doc = json(&out);
        if let Some(cert) = doc.get("certificate") {
            doc = cert.clone();
        }
        let path = temp_file(&format!("cert{i}.json"), &doc.to_string());
        let check = sgflow(&["verify", path.to_str().unwrap()], "");
        assert_eq!(check.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let looped = sgflow(&["admissible"], "v 2\ne 0 0 +\n");
    assert_eq!(looped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&looped.stderr).contains("line 2"));

    let bridge = sgflow(&["admissible"], "v 2\ne 0 1 -\n");
    assert_eq!(bridge.status.code(), Some(1));

    let no_flow = sgflow(&["flow-number"], "v 3\ne 0 1 +\ne 1 2 +\ne 2 0 -\n");
    assert_eq!(no_flow.status.code(), Some(1));
    assert_eq!(json(&no_flow)["flow_number"], Value::Null);

    let capped = sgflow_env(
        &["flow-number"],
        &make("Petersen", 0),
        &[("SGFLOW_NODE_BUDGET", "10")],
    );
    assert_eq!(capped.status.code(), Some(3));

    assert_eq!(
        sgflow(&["make", "--family", "nonsense"], "").status.code(),
        Some(2)
    );
    assert_eq!(sgflow(&["frobnicate"], "").status.code(), Some(2));
}

#[test]
fn structure_answers() {
    let p = make("Petersen", 0);
    let out = sgflow(&["structure", "--alpha", "--resistance", "--oddness"], &p);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["alpha"], 4);
    assert_eq!(r["resistance"], 2);
    assert_eq!(r["oddness"]["value"], 2);
    assert_eq!(
        sgflow(&["structure", "--kotzig"], &p).status.code(),
        Some(1)
    );
    assert_eq!(
        sgflow(&["structure", "--t-factor", "1"], &p).status.code(),
        Some(0)
    );
}

#[test]
fn minimal_sets_and_x_spectrum_on_petersen() {
    let p = make("Petersen", 0);
    let out = sgflow(&["minimal-sets", "--r", "3", "--max-size", "3"], &p);
    let sets = json(&out)["sets"].as_array().unwrap().clone();
    assert!(!sets.is_empty() && sets.iter().all(|s| s.as_array().unwrap().len() == 3));
    let out = sgflow(&["x-spectrum", "--edges", "0,8,12"], &p);
    assert_eq!(
        json(&out)["values"],
        serde_json::json!(["3/1", "4/1", "5/1"])
    );
}

#[test]
fn batch_is_deterministic() {
    let path = data("cubic8.g6");
    let first = sgflow(&["batch", "--graph6", &path], "");
    let second = sgflow(&["batch", "--graph6", &path], "");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let lines: Vec<Value> = stdout(&first)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l["vertices"] == 8 && l["edges"] == 12));

    let empty = temp_file("empty.g6", "");
    let out = sgflow(&["batch", "--graph6", empty.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn made_graphs_round_trip() {
    let text = make("G_n", 3);
    assert!(text.starts_with("# name: G_n(3)"));
    let out = sgflow(&["spectrum", "--integer"], &text);
    assert_eq!(
        json(&out)["values"],
        serde_json::json!(["3/1", "4/1", "6/1"])
    );
}
