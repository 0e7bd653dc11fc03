use std::path::Path;
use std::process::Command;

use binormal::cli::{report_inventory, run};
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_binormal")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn call(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("binormal").chain(args.iter().copied()), &mut out, &mut err);
    (code, serde_json::from_slice(&out).unwrap_or(Value::Null))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const SQUARE: &str = r#"{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]],"name":"square"}"#;

#[test]
fn normals_on_files_and_bodies() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "square.json", SQUARE);
    let (code, v) = call(&["normals", "--in", &sq]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "binormal-report/1");
    assert_eq!(v["payload"]["isolated"].as_array().unwrap().len(), 2);
    assert_eq!(v["payload"]["families"].as_array().unwrap().len(), 2);
    assert_eq!(v["payload"]["kuiper"]["satisfied"], true);

    let (code, v) = call(&["normals", "--body", "ellipsoid:2,1.5,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["isolated"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    assert_eq!(bin(&["normals", "--in", &bad]).0, 2);
    assert_eq!(bin(&["normals", "--in", "/nonexistent/x.json"]).0, 2);
    assert_eq!(bin(&["normals", "--body", "blob:1"]).0, 2);
    assert_eq!(bin(&["frobnicate"]).0, 2);
    let (code, _, err) = bin(&["construct", "ladder1", "--Theta", "3.0", "--n", "5"]);
    assert_eq!(code, 3);
    assert!(err.contains("too large"));
    let sq = write(dir.path(), "sq2.json", r#"{"dim":2,"vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]}"#);
    assert_eq!(bin(&["construct", "capgraft", "--in", &sq, "--R", "1.45", "--eps", "0.2"]).0, 3);
    assert_eq!(bin(&["construct", "conesharpen", "--in", &sq, "--pairs", "0:2", "--p", "1"]).0, 3);
    assert_eq!(bin(&["--help"]).0, 0);
}

#[test]
fn construct_examples() {
    let (code, v) = call(&["construct", "ladder1", "--R", "1", "--Theta", "0.5", "--n", "100"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["point_count"], 200);
    assert_eq!(p["geometry"]["vertices"].as_array().unwrap().len(), 200);
    assert_eq!(p["pass"], true);
    assert_eq!(p["ratio_target"], 0.5);

    let (code, v) = call(&["construct", "ladder2", "--R", "1", "--A", "0.1", "--T", "0.4", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["point_count"], 27);
    assert!((v["payload"]["delta"].as_f64().unwrap() - 1.23457e-4).abs() < 1e-9);
    assert_eq!(v["payload"]["strict_max"]["strict_max"], 27);
}

#[test]
fn construct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let tol = 1e-9;
    for (name, args) in [
        ("ladder1", vec!["construct", "ladder1", "--n", "10"]),
        ("rect", vec!["construct", "rectgraft", "--extra", "0.1", "--width", "0.05"]),
    ] {
        let geo = dir.path().join(format!("{name}.json")).display().to_string();
        let mut a = args.clone();
        let sq = write(dir.path(), "sq.json", r#"{"dim":2,"vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]}"#);
        if name == "rect" {
            a.extend(["--in", &sq]);
        }
        a.extend(["--geometry", &geo]);
        let (code, report) = call(&a);
        assert_eq!(code, 0, "{name}");
        let certified = report_inventory(&report).unwrap();
        let (code, normals) = call(&["normals", "--in", &geo]);
        assert_eq!(code, 0);
        let found = report_inventory(&normals).unwrap();
        for c in certified.chords() {
            assert!(
                found.chords().any(|f| f.unoriented_distance(c) <= 10.0 * tol * 4.0),
                "{name}: chord of length {} lost",
                c.length()
            );
        }
    }
}

#[test]
fn deterministic_payloads() {
    for args in [
        vec!["normals", "--body", "ellipsoid:2,1.5,1", "--seed", "7"],
        vec!["normals", "--body", "ball:1", "--seed", "3"],
        vec!["construct", "ladder2", "--m", "2"],
    ] {
        let (_, a) = call(&args);
        let (_, b) = call(&args);
        assert_eq!(a["payload"], b["payload"]);
        assert_eq!(a["config"], b["config"]);
    }
}

#[test]
fn analyze_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("e.json").display().to_string();
    let (code, _) = call(&["normals", "--body", "ellipsoid:2,1.5,1", "--out", &report]);
    assert_eq!(code, 0);
    let (code, v) = call(&["analyze", "--report", &report]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["spectrum"]["injective"], true);
    assert_eq!(v["payload"]["spectrum"]["lengths"].as_array().unwrap().len(), 3);
    assert_eq!(v["payload"]["holder"]["pass"], true);

    let (code, v) = call(&["verify", "--report", &report, "--body", "ellipsoid:2,1.5,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["pass"], true);
    let (code, _) = call(&["verify", "--report", &report, "--body", "ellipsoid:2,1.5,1.2"]);
    assert_eq!(code, 1);

    let (code, v) = call(&["analyze", "--body", "ellipse:2,1", "--classify", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["classifications"].as_array().unwrap().len(), 2);

    let ladder = dir.path().join("l.json").display().to_string();
    call(&["construct", "ladder1", "--n", "1000", "--out", &ladder]);
    let (code, v) = call(&["analyze", "--report", &ladder]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["ratio_target"], 0.5);
    assert!(v["payload"]["dimension_ratio"].as_f64().unwrap() > 0.39);

    let empty = write(
        dir.path(),
        "empty.json",
        r#"{"dim":2,"isolated":[],"families":[],"kuiper":{"count":0,"required":2,"satisfied":false}}"#,
    );
    assert_eq!(bin(&["analyze", "--report", &empty]).0, 2);
    assert_eq!(bin(&["analyze"]).0, 2);
}

#[test]
fn export_figures() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("e.svg");
    let (code, _) = call(&["export", "--body", "ellipse:2,1", "--out", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 2);
    assert!(text.contains(">b1<") && text.contains(">b2<"));

    let geo = dir.path().join("l2.json").display().to_string();
    let rep = dir.path().join("l2.r.json").display().to_string();
    call(&["construct", "ladder2", "--m", "3", "--geometry", &geo, "--out", &rep]);
    let mesh = dir.path().join("l2.off");
    let (code, v) = call(&["export", "--in", &geo, "--report", &rep, "--out", mesh.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["chords"], 27);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("l2.chords.json")).unwrap()).unwrap();
    assert_eq!(side["chords"].as_array().unwrap().len(), 27);
    assert!(std::fs::read_to_string(&mesh).unwrap().starts_with("OFF"));

    let out = dir.path().join("x.svg").display().to_string();
    assert_eq!(bin(&["export", "--body", "ball:1,4", "--format", "svg", "--out", &out]).0, 2);
    assert_eq!(bin(&["export", "--body", "ellipsoid:2,1,0.5", "--format", "svg", "--out", &out]).0, 2);
}
