use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const NON_DISCRETE: &str = r#"{"group": {"type": "GLinner", "n": 2, "d": 1},
  "blocks": [{"core": "chi", "dim": 1, "duality": "none", "a": 1, "mult": 2}]}"#;

#[test]
fn example_a_passes() {
    let v = json(&run(&["examples", "--case", "A"]));
    assert_eq!(v["exact"], true);
    assert_eq!(v["result"]["pass"], true);
    let d = &v["result"]["cases"][0]["detail"];
    assert_eq!(d["kappa_nontrivial"], true);
    assert_eq!(d["twisted_irrep_dimensions"], serde_json::json!([2]));
}

#[test]
fn all_examples_pass() {
    let v = json(&run(&["examples"]));
    assert_eq!(v["result"]["cases"].as_array().unwrap().len(), 5);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn census_reports_both_sides() {
    let v = json(&run(&["springer", "census", "--type", "C", "--rank", "8"]));
    let c = &v["result"]["census"];
    assert_eq!(v["result"]["balanced"], true);
    assert_eq!(c["lhs"], c["rhs"]);
    assert_eq!(c["lhs"], 336);
}

#[test]
fn classify_non_discrete() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.json", NON_DISCRETE);
    let v = json(&run(&["lparam", "classify", "--in", p.to_str().unwrap()]));
    assert_eq!(v["result"]["discrete"], false);
    assert_eq!(v["result"]["cuspidal"], false);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.json", NON_DISCRETE);
    for args in [
        vec!["lparam", "component", "--in", p.to_str().unwrap()],
        vec!["examples", "--compact"],
        vec!["reps", "table", "--name", "S4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad_dim = file(
        &dir,
        "dim.json",
        r#"{"group": {"type": "Sp", "n": 2}, "blocks": [{"core": "chi", "dim": 1, "duality": "orth", "a": 3, "mult": 1}]}"#,
    );
    let out = run(&["lparam", "classify", "--in", bad_dim.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("total dimension 3"));

    let unsupported = file(
        &dir,
        "big.json",
        r#"{"group": {"type": "SOodd", "n": 2}, "blocks": [{"core": "chi", "dim": 1, "duality": "orth", "a": 4}],
            "enhancement": {"signs": {"z:chi:4": 1}}}"#,
    );
    let out = run(&["lparam", "support", "--in", unsupported.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let malformed = file(&dir, "m.json", "{\"group\": {\"type\": \"Sp\", \"n\": 1},\n \"blocks\": [}");
    let out = run(&["lparam", "classify", "--in", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn batch_is_independent_of_jobs() {
    let dir = TempDir::new().unwrap();
    let items: Vec<String> = (1..=6)
        .map(|n| {
            format!(
                r#"{{"group": {{"type": "GLinner", "n": {n}, "d": 1}}, "blocks": [{{"core": "pi", "dim": {n}, "duality": "none", "a": 1}}]}}"#
            )
        })
        .chain(std::iter::once(NON_DISCRETE.to_string()))
        .collect();
    let p = file(&dir, "batch.json", &format!("[{}]", items.join(",")));
    let one = json(&run(&["lparam", "batch", "--in", p.to_str().unwrap(), "--jobs", "1"]));
    let three = json(&run(&["lparam", "batch", "--in", p.to_str().unwrap(), "--jobs", "3"]));
    assert_eq!(one["result"], three["result"]);
    let r = one["result"].as_array().unwrap();
    assert_eq!(r.len(), 7);
    assert!(r[..6].iter().all(|c| c["cuspidal"] == true));
    assert_eq!(r[6]["discrete"], false);
}

#[test]
fn group_level_commands() {
    let dir = TempDir::new().unwrap();
    let v = json(&run(&["group", "summary", "--name", "Q8"]));
    assert_eq!(v["result"]["order"], 8);
    assert_eq!(v["result"]["center_order"], 2);

    let c = file(&dir, "c.json", r#"{"group": {"kind": "named", "name": "C2xC2"}, "m": 2, "values": []}"#);
    let v = json(&run(&["tga", "irreps", "--in", c.to_str().unwrap()]));
    assert_eq!(v["result"]["dimensions"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["result"]["coboundary"], true);
    let v = json(&run(&["tga", "cohomologous", "--in", c.to_str().unwrap(), "--other", c.to_str().unwrap()]));
    assert_eq!(v["result"]["cohomologous"], true);

    let s3 = file(
        &dir,
        "s3.json",
        r#"{"group": {"kind": "perm", "generators": [[1, 2, 0], [1, 0, 2]]}, "normal": [[0]]}"#,
    );
    let v = json(&run(&["clifford", "bijection", "--in", s3.to_str().unwrap()]));
    assert_eq!(v["result"]["bijection"], true);
    assert_eq!(v["result"]["dimension_sum"], 6);

    let act = file(
        &dir,
        "act.json",
        r#"{"labels": ["x"], "group": {"kind": "named", "name": "C2"}, "generator_action": [[0]]}"#,
    );
    let v = json(&run(&["extquot", "build", "--in", act.to_str().unwrap()]));
    assert_eq!(v["result"]["size"], 2);
}

#[test]
fn section_cocycle_matches_clifford_cocycle_inverse() {
    let dir = TempDir::new().unwrap();
    let q8 = r#"{"kind": "monomial", "dim": 2, "generators": [
        [[0, 0, "1*z(4)^1"], [1, 1, "-1*z(4)^1"]],
        [[0, 1, "-1"], [1, 0, "1"]]]}"#;
    let spec = format!(r#"{{"group": {q8}, "normal": [[0, 0]], "eps": 1, "section": [[], [0], [1], [0, 1]]}}"#);
    let p = file(&dir, "sec.json", &spec);
    let v = json(&run(&["springer", "cocycle", "--in", p.to_str().unwrap()]));
    assert_eq!(v["result"]["coboundary"], false);
    assert_eq!(v["result"]["comparison"]["matches_inverse"], true);
}

#[test]
fn schema_lists_formats() {
    let v: Value = serde_json::from_slice(&run(&["--schema"]).stdout).unwrap();
    for k in ["group", "cocycle", "section", "action_datum", "springer_table", "lparameter"] {
        assert!(v.get(k).is_some(), "{k}");
    }
}
