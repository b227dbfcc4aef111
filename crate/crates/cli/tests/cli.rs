use std::path::{Path, PathBuf};
use std::process::Command;

use symtrace_cli::{run, RunOutput, CACHE_ENV, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, EXIT_RESOURCE};
use symtrace_core::trace::ad_power_example;

fn cli(args: &[&str]) -> RunOutput {
    let mut full = vec!["symtrace"];
    full.extend_from_slice(args);
    run(full)
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn body(out: &RunOutput) -> Vec<&str> {
    out.stdout.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn lie_dimensions_and_bases() {
    let out = cli(&["lie", "dim", "--n", "4", "--deg", "6"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(body(&out), ["670"]);
    let out = cli(&["lie", "basis", "--n", "2", "--deg", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(body(&out).len(), 2);
}

#[test]
fn trace_of_the_power_example() {
    let dir = tempfile::tempdir().unwrap();
    let d = ad_power_example(2, 3).unwrap();
    let path = write(dir.path(), "d.json", &serde_json::to_string(&d.to_json()).unwrap());
    let out = cli(&["trace", "--deriv", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(body(&out), ["x1^3"]);
    let first = cli(&["trace", "--deriv", path.to_str().unwrap(), "--contraction", "first"]);
    assert_eq!(body(&first), ["-x1^3"]);
}

#[test]
fn johnson_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let endo = write(dir.path(), "e.json", r#"{"n": 3, "images": {"x1": "x2.x1.X2"}}"#);
    let e = endo.to_str().unwrap();
    let tau = cli(&["johnson", "tau", "--endo", e]);
    assert_eq!(tau.code, EXIT_OK, "{}", tau.stderr);
    assert_eq!(body(&tau), ["x1 ↦ -[x1,x2]"]);
    let too_deep = cli(&["johnson", "tau", "--endo", e, "--k", "2"]);
    assert_eq!(too_deep.code, EXIT_INVALID);
    let level = cli(&["--format", "json", "johnson", "level", "--endo", e, "--k", "3"]);
    let v: serde_json::Value = serde_json::from_str(&level.stdout).unwrap();
    assert_eq!(v["result"]["level"], 1);
    let moved = write(dir.path(), "m.json", r#"{"n": 4, "symplectic": true, "images": {"a1": "a1.a2"}}"#);
    let b = cli(&["--format", "json", "johnson", "boundary", "--endo", moved.to_str().unwrap()]);
    assert_eq!(b.code, EXIT_OK, "{}", b.stderr);
    let v: serde_json::Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(v["result"]["fixes_boundary"], false);
}

#[test]
fn hslice_dimension_and_cap() {
    let out = cli(&["--format", "json", "hslice", "--g", "2", "--k", "3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["dim"], 36);
    let capped = cli(&["hslice", "--g", "2", "--k", "9"]);
    assert_eq!(capped.code, EXIT_RESOURCE);
    assert!(capped.stderr.contains("resource cap"));
}

#[test]
fn cohomology_csv_row() {
    let out = cli(&["--format", "csv", "cohomology", "--g", "3", "--d", "2", "--weight", "2", "--invariant"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let mut reader = csv::Reader::from_reader(out.stdout.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "g");
    assert!(headers.iter().any(|h| h == "sha256"));
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    let get = |name: &str| rows[0][headers.iter().position(|h| h == name).unwrap()].to_string();
    assert_eq!(get("dim_H_invariant"), "1");
    assert_eq!(get("classes"), "e1=[7/4]");
}

#[test]
fn graph_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = write(
        dir.path(),
        "g.json",
        r#"{"vertices":[{"id":0,"type":"sym","valence":3},{"id":1,"type":"sym","valence":3}],"edges":[[0,1],[0,1],[0,1]]}"#,
    );
    let out = cli(&["--format", "json", "graph", "phi", "--graph", gamma.to_str().unwrap(), "--g", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["invariant"], true);
    assert_eq!(v["result"]["cocycle"], true);
    let theta = write(
        dir.path(),
        "t.json",
        r#"{"vertices":[{"id":0,"type":"alt3"},{"id":1,"type":"alt3"}],"edges":[[0,1],[0,1],[0,1]]}"#,
    );
    assert_eq!(cli(&["graph", "phi", "--graph", theta.to_str().unwrap(), "--g", "2"]).code, EXIT_INVALID);
    let bad = write(dir.path(), "b.json", r#"{"vertices":[{"id":0,"type":"sym","valence":4}],"edges":[[0,0],[0,0]]}"#);
    assert_eq!(cli(&["graph", "phi", "--graph", bad.to_str().unwrap(), "--g", "2"]).code, EXIT_INVALID);
    let e = cli(&["graph", "enum", "--d-max", "2", "--n-max", "2"]);
    assert_eq!(e.code, EXIT_OK);
    assert_eq!(body(&e).len(), 2);
}

#[test]
fn invariants_of_two_forms() {
    let out = cli(&["invariants", "--g", "2", "--space", "ext", "--deg", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(body(&out), ["1"]);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(cli(&["lie", "dim", "--n", "4"]).code, EXIT_INVALID);
    assert_eq!(cli(&["trace", "--deriv", "/nonexistent/file.json"]).code, EXIT_INVALID);
}

#[test]
fn reports_are_reproducible() {
    let args = ["--format", "json", "hslice", "--g", "2", "--k", "2"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["hash"].as_str().unwrap().len(), 64);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = cli(&["--output", path.to_str().unwrap(), "lie", "dim", "--n", "3", "--deg", "4"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("18\n"));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symtrace"))
}

#[test]
fn binary_exit_codes() {
    let ok = binary().args(["lie", "dim", "--n", "2", "--deg", "5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = binary().arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    let cap = binary().args(["--cap", "10", "hslice", "--g", "2", "--k", "3"]).output().unwrap();
    assert_eq!(cap.status.code(), Some(EXIT_RESOURCE));
}

#[test]
fn selfcheck_detects_a_flipped_convention() {
    let good = binary().arg("selfcheck").output().unwrap();
    assert_eq!(good.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&good.stdout));
    let flipped = binary().args(["selfcheck", "--flip-omega"]).output().unwrap();
    assert_eq!(flipped.status.code(), Some(EXIT_CHECK_FAILED));
    assert!(String::from_utf8_lossy(&flipped.stdout).contains("FAIL even_trace_on_h"));
}

#[test]
fn cache_directory_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "hslice", "--g", "2", "--k", "2"];
    let first = binary().args(args).env(CACHE_ENV, dir.path()).output().unwrap();
    assert_eq!(first.status.code(), Some(EXIT_OK));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = binary().args(args).env(CACHE_ENV, dir.path()).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let text = binary().args(["hslice", "--g", "2", "--k", "2"]).env(CACHE_ENV, dir.path()).output().unwrap();
    assert_eq!(text.status.code(), Some(EXIT_OK));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
