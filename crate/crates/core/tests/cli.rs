use std::process::Command;

use reidemeister::cli::run;
use reidemeister::spectra::SpectrumDescriptor;
use serde_json::{json, Value};

fn ok_json(args: &[&str]) -> Value {
    let out = run(args.iter().copied());
    assert_eq!(out.code, 0, "{:?}: {}", args, out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    let v = ok_json(&["spectrum", "--family", "z2-semidirect", "--matrix", "2,3;3,5"]);
    assert_eq!(v["result"], json!({"kind": "finite", "values": [4]}));
    assert_eq!(v["trace"][0], "Prop-0or4");

    let v = ok_json(&["rnumber", "--family", "heisenberg-times-z", "--n", "1", "--witness", "phi_m", "--param", "3"]);
    assert_eq!(v["result"], json!(12));

    let v = ok_json(&["spectrum", "--family", "z2-semidirect", "--matrix", "1,0;0,1"]);
    assert_eq!(v["result"], json!({"kind": "full"}));
}

#[test]
fn envelope_fields() {
    let v = ok_json(&["spectrum", "--family", "z3-semidirect", "--matrix", "[[1,0,1],[0,5,2],[0,2,1]]", "--bound", "500"]);
    assert_eq!(v["bound"], json!(500));
    assert_eq!(v["version"], json!(env!("CARGO_PKG_VERSION")));
    assert_eq!(v["result"], json!({"kind": "r_infinity"}));
    let trace: Vec<&str> = v["trace"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(trace.contains(&"parity-obstruction"), "{:?}", trace);
}

#[test]
fn undecided_exits_with_two() {
    let out = run(["spectrum", "--family", "z2-semidirect", "--matrix", "3,1;2,1", "--bound", "30"]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let d: SpectrumDescriptor = serde_json::from_value(v["result"].clone()).unwrap();
    assert!(d.is_undecided() && d.is_well_formed());
    assert_eq!(v["result"]["bound"], json!(30));
}

#[test]
fn decide_outcomes() {
    let v = ok_json(&["decide", "--matrix", "2,3;3,5"]);
    assert_eq!(v["result"], json!({"outcome": "witness", "m": 0, "n": -1, "p": 1}));
    let v = ok_json(&["decide", "--matrix", "0,-1;1,0"]);
    assert_eq!(v["result"], json!({"outcome": "proven_empty"}));
    let v = ok_json(&["decide", "--matrix", "5,2;2,1", "--c", "0,1"]);
    assert_eq!(v["result"], json!({"outcome": "r_infinity", "reason": "parity-obstruction"}));
    let v = ok_json(&["decide", "--matrix", "5,2;2,1", "--c", "0,0"]);
    assert_eq!(v["result"]["outcome"], json!("eight"));
    let out = run(["decide", "--matrix", "3,1;2,1", "--bound", "20"]);
    assert_eq!(out.code, 2);
}

#[test]
fn parse_errors_name_token_and_position() {
    let out = run(["spectrum", "--family", "z2-semidirect", "--matrix", "2,3;3,x5"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("\"x5\"") && out.stderr.contains("position 6"), "{}", out.stderr);

    let out = run(["spectrum", "--family", "z2-semidirect", "--matrix", "1,2,3;4,5"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("ragged"), "{}", out.stderr);

    let out = run(["spectrum", "--family", "z3-semidirect", "--matrix", "2,3;3,5"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("3x3"), "{}", out.stderr);

    let out = run(["spectrum", "--family", "klein", "--matrix", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("klein"), "{}", out.stderr);

    let out = run(["spectrum", "--family", "z2-semidirect", "--matrix", "2,0;0,1"]);
    assert_eq!(out.code, 1);

    let out = run(["spectrum", "--family", "z2-semidirect", "--matrix", "2,3;3,5", "--bound", "0"]);
    assert_eq!(out.code, 1);

    let out = run(["spectrum", "--familly", "z2-semidirect"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("--familly"), "{}", out.stderr);

    assert_eq!(run(Vec::<String>::new()).code, 1);
    assert_eq!(run(["--help"]).code, 0);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["spectrum", "--family", "z2-ext", "--matrix", "5,2;2,1", "--n0", "1,1", "--bound", "300"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a.stdout);
    assert_eq!(v["result"], json!({"kind": "finite", "values": [8]}));
}

#[test]
fn tables_match_golden_files() {
    let out = run(["tables", "--bound", "10000"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, include_str!("golden/tables.json"));
    let out = run(["tables", "--bound", "10000", "--format", "text"]);
    assert_eq!(out.stdout, include_str!("golden/tables.txt"));
    let v: Value = serde_json::from_str(include_str!("golden/tables.json")).unwrap();
    let rows = v["result"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["matches"] == json!(true)));
    for s in ["4", "5.1", "5.2", "5.3"] {
        assert!(rows.iter().any(|r| r["section"] == json!(s)));
        let one = ok_json(&["tables", "--section", s, "--bound", "10000"]);
        assert!(one["result"].as_array().unwrap().iter().all(|r| r["section"] == json!(s)));
    }
}

#[test]
fn rnumber_from_json_automorphism() {
    let spec = r#"{"family": {"kind": "free_abelian", "n": 2}, "images": {"e1": [-1, 0], "e2": [0, -1]}}"#;
    let v = ok_json(&["rnumber", "--automorphism", spec]);
    assert_eq!(v["result"], json!(4));
    let v = ok_json(&["rnumber", "--automorphism", r#"{"family": {"kind": "free_abelian", "n": 1}, "images": {"e1": [1]}}"#]);
    assert_eq!(v["result"], json!("infinity"));
    let out = run(["rnumber", "--automorphism", r#"{"family": {"kind": "free_abelian", "n": 1}, "images": {"e1": [2]}}"#]);
    assert_eq!(out.code, 1);
}

#[test]
fn oracle_counts_classes() {
    let v = ok_json(&["oracle", "--family", "heisenberg", "--n", "1", "--witness", "phi_m", "--param", "2", "--radius", "3"]);
    assert_eq!(v["result"]["class_count"], json!(4));
    assert_eq!(v["result"]["complete"], json!(true));
    assert_eq!(v["result"]["formula"], json!(4));
}

#[test]
fn binary_honors_twisted_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_reidemeister"))
        .args(["spectrum", "--family", "z2-semidirect", "--matrix", "3,1;2,1"])
        .env("TWISTED_BOUND", "25")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], json!(25));

    let out = Command::new(env!("CARGO_BIN_EXE_reidemeister"))
        .args(["spectrum", "--family", "z2-semidirect", "--matrix", "2,3;3,x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 6"));
}
