use std::path::Path;
use std::process::{Command, Output};

use krasner::corpus;
use krasner::document::StructureDocument;

fn krasner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krasner")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

#[test]
fn bundled_documents_match_builtins() {
    for name in ["three-element", "z4"] {
        let text = std::fs::read_to_string(data(&format!("{name}.json"))).unwrap();
        let h = StructureDocument::from_json(&text).unwrap().build().unwrap();
        assert!(h.same_tables(&corpus::builtin(name).unwrap()), "{name}");
        let o = krasner(&["validate", "--structure", &data(&format!("{name}.json"))]);
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn ideals_of_z6() {
    let o = krasner(&["ideals", "--structure", "builtin:z6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("z6: 4 hyperideals\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("prime maximal")).count(), 2);
}

#[test]
fn radical_of_zero_in_z4() {
    let o = krasner(&["radical", "--structure", "builtin:z4", "--ideal", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rad {0} = {0, 2}\n");
}

#[test]
fn classify_exit_codes() {
    let refuted = krasner(&["classify", "--structure", "builtin:z8", "--ideal", "0,4"]);
    assert_eq!(refuted.status.code(), Some(1));
    let out = stdout(&refuted);
    assert!(out.contains("witness (2, 2) with s = 1: product 4 lies in P and not in φ(P)"), "{out}");
    assert_eq!(out.lines().filter(|l| l.trim_start().starts_with("slot ")).count(), 2);

    let holds = krasner(&["classify", "--structure", "builtin:z8", "--ideal", "0,4", "--delta", "delta1"]);
    assert_eq!(holds.status.code(), Some(0));
    assert!(stdout(&holds).lines().nth(1) == Some("holds"));

    let tuple = krasner(&["classify", "--structure", "builtin:z8", "--ideal", "0,4", "--witness", "2,2"]);
    assert_eq!(tuple.status.code(), Some(1));

    for bad in [
        vec!["classify", "--structure", "builtin:z4", "--ideal", "0,1,2,3"],
        vec!["classify", "--structure", "builtin:z4", "--ideal", "0", "--phi", "bogus"],
        vec!["classify", "--structure", "builtin:z6", "--ideal", "0,2,4", "--mulset", "1,2"],
        vec!["validate", "--structure", "builtin:nope"],
    ] {
        let o = krasner(&bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    }
}

#[test]
fn json_reports_carry_a_version() {
    let o = krasner(&["classify", "--structure", "builtin:z4", "--ideal", "0,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["structure"], "z4");
}

#[test]
fn product_and_localization_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prod = dir.path().join("p.json");
    let o = krasner(&["product", "--structure", "builtin:z2", "--structure", "builtin:z3", "--out", prod.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let h = StructureDocument::from_json(&std::fs::read_to_string(&prod).unwrap()).unwrap().build().unwrap();
    assert_eq!(h.size(), 6);
    assert_eq!(krasner(&["validate", "--structure", prod.to_str().unwrap()]).status.code(), Some(0));

    let loc = dir.path().join("l.json");
    let o = krasner(&["localize", "--structure", "builtin:z6", "--mulset", "1,5", "--out", loc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let h = StructureDocument::from_json(&std::fs::read_to_string(&loc).unwrap()).unwrap().build().unwrap();
    assert_eq!(h.size(), 6);
}

#[test]
fn exhausted_budget_is_partial() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = krasner(&["theorems", "--only", "T01,T15", "--budget", "10", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["partial"], true);
}

#[test]
fn theorem_reports_are_byte_identical() {
    let args = ["theorems", "--only", "T01,T25", "--no-timing", "--json"];
    let a = krasner(&args);
    let b = krasner(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
