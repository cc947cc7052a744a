use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const OCTAGON: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../core/data/octagon83_genus2.json"
);

fn atqc(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_atqc"))
        .args(args)
        .env_remove("ATQC_ORACLE_CEILING")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn atqc");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn built(args: &[&str]) -> Vec<u8> {
    let out = atqc(args, None);
    assert!(out.status.success());
    out.stdout
}

#[test]
fn classify() {
    let v = json(&atqc(&["classify", "--p", "7", "--q", "3"], None));
    assert_eq!(v["class"], "hyperbolic");
    assert_eq!(v["key"], 5);
    let v = json(&atqc(&["classify", "--p", "4", "--q", "4"], None));
    assert_eq!(v["class"], "euclidean");
    let out = atqc(&["classify", "--p", "2", "--q", "9"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn params() {
    let v = json(&atqc(&["params", "--p", "8", "--q", "3", "--g", "2"], None));
    assert_eq!((v["n"].as_i64(), v["k"].as_i64()), (Some(24), Some(4)));
    assert_eq!((v["d_x"].as_i64(), v["d_z"].as_i64()), (Some(5), Some(2)));
    assert_eq!(v["rate"], "1/6");
    let v = json(&atqc(&["params", "--p", "7", "--q", "3", "--g", "2"], None));
    assert_eq!((v["d_x"].as_i64(), v["d_z"].as_i64()), (Some(6), Some(3)));
    let v = json(&atqc(
        &["params", "--p", "7", "--q", "3", "--g", "2", "--favor-z"],
        None,
    ));
    assert_eq!((v["d_x"].as_i64(), v["d_z"].as_i64()), (Some(3), Some(6)));
    let out = atqc(&["params", "--p", "6", "--q", "3", "--g", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not hyperbolic"));
}

#[test]
fn build_then_distance() {
    let complex = built(&["build", "--hex-apothem", "2"]);
    let v = json(&atqc(&["distance"], Some(&complex)));
    assert_eq!((v["d_x"].as_u64(), v["d_z"].as_u64()), (Some(4), Some(2)));
    assert_eq!(v["method"], "both-agree");

    let again = json(&atqc(&["distance", "-"], Some(&complex)));
    assert_eq!(v, again);
}

#[test]
fn oracle_ceiling_from_env_and_flag() {
    let complex = built(&["build", "--square", "3"]);
    let v = json(&atqc(
        &["distance", "--oracle-ceiling", "10"],
        Some(&complex),
    ));
    assert_eq!(v["method"], "search");
    assert!(v["oracle"].is_null());

    let mut child = Command::new(env!("CARGO_BIN_EXE_atqc"))
        .arg("distance")
        .env("ATQC_ORACLE_CEILING", "5")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&complex).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["method"], "search");
}

#[test]
fn export_alist() {
    let complex = built(&["build", "--square", "3"]);
    let out = atqc(&["export", "--format", "alist"], Some(&complex));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // hz: 9 vertex rows over 18 qubits
    assert_eq!(lines[0], "18 9");
    assert_eq!(lines[2], ["2"; 18].join(" "));
    assert_eq!(lines[3], ["4"; 9].join(" "));

    let out = atqc(
        &["export", "--format", "dense-text", "--matrix", "hx"],
        Some(&complex),
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 9);

    let out = atqc(&["export", "--format", "yaml"], Some(&complex));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_and_normalize_ingested_complex() {
    let v = json(&atqc(&["check", OCTAGON], None));
    assert_eq!(v["betti1"], 4);
    assert_eq!(v["stabilizers"]["k"], 4);
    assert_eq!(v["boundary_of_boundary_zero"], true);
    let out = atqc(&["normalize", OCTAGON], None);
    assert_eq!(out.stdout, std::fs::read(OCTAGON).unwrap());
}

#[test]
fn malformed_input_is_rejected() {
    let out = atqc(&["check"], Some(b"{\"genus\": 1}"));
    assert_eq!(out.status.code(), Some(2));
    let out = atqc(&["check", "/nonexistent/complex.json"], None);
    assert_eq!(out.status.code(), Some(4));
    let out = atqc(&["build", "--hex-edge", "4"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 divides lambda"));
}

#[test]
fn tables_and_curves() {
    let out = atqc(&["table"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 14);
    assert!(text.contains("\"{10,5}\",(g-1),2(g-1),5(g-1),2g"));

    let out = atqc(
        &[
            "curves", "--pair", "7,3", "--pair", "{5,4}", "--g-min", "2", "--g-max", "5",
        ],
        None,
    );
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().lines().count(),
        1 + 8
    );
    let out = atqc(&["curves", "--pair", "7,3", "--g-max", "65"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("atqc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tables.csv");
    let out = atqc(&["table", "--out", path.to_str().unwrap()], None);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("table,pair,"));
    std::fs::remove_dir_all(&dir).unwrap();
}
