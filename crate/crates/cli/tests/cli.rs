use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn djf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_djf"))
        .args(args)
        .env_remove("DJF_SCD_SUPPORT")
        .output()
        .expect("djf runs")
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--report", "json"];
    all.extend_from_slice(args);
    let out = djf(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is one JSON report");
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn strongly_connected_has_no_dicut() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cyc.txt", "digraph 3 3\n0 1\n1 2\n2 0\n");
    let (code, v) = json_report(&["min-dicut", &f]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"], "negative");
}

#[test]
fn bundle_packs_two_dijoins() {
    let dir = tempfile::tempdir().unwrap();
    let g = djf(&["gen", "parallel-bundle", "--n", "2", "--mult", "12"]);
    assert!(g.status.success());
    let f = write(dir.path(), "b12.txt", std::str::from_utf8(&g.stdout).unwrap());
    let (code, v) = json_report(&["pack-dijoins", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tau"], 12);
    assert_eq!(v["result"]["dijoins"].as_array().unwrap().len(), 2);
}

#[test]
fn k4_scd_decomposition_is_absent() {
    let dir = tempfile::tempdir().unwrap();
    let e = djf(&["fixtures", "--name", "k4_all_ones", "--emit"]);
    assert!(e.status.success());
    let f = write(dir.path(), "k4.txt", std::str::from_utf8(&e.stdout).unwrap());
    let (code, v) = json_report(&["decompose", &f, "--family", "scd", "--tau", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["status"], "proven_absent");
}

#[test]
fn six_flow_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = djf(&["--seed", "5", "gen", "random2ec-graph", "--n", "8", "--m", "14"]);
    let gf = write(dir.path(), "g.txt", std::str::from_utf8(&g.stdout).unwrap());
    let flow = djf(&["six-flow", &gf]);
    assert!(flow.status.success());
    let ff = write(dir.path(), "f.json", std::str::from_utf8(&flow.stdout).unwrap());
    assert_eq!(djf(&["verify-flow", &gf, "--flow", &ff]).status.code(), Some(0));
    // Break conservation on edge 0.
    let mut fv: Value = serde_json::from_str(&std::fs::read_to_string(&ff).unwrap()).unwrap();
    fv["values"][0] = Value::from(fv["values"][0].as_i64().unwrap() % 5 + 1);
    let bad = write(dir.path(), "bad.json", &fv.to_string());
    let (code, v) = json_report(&["verify-flow", &gf, "--flow", &bad]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn reports_are_stable_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.txt", "digraph 4 6\n0 1\n0 2\n1 3\n2 3\n0 3\n1 2\n");
    let run = || {
        let (code, mut v) = json_report(&["pack-arborescences", &f, "--count", "1"]);
        assert_eq!(code, 0);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn bad_input_and_guards_have_their_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "digraph 2 1\n0 0\n");
    assert_eq!(djf(&["min-dicut", &f]).status.code(), Some(4));
    assert_eq!(djf(&["min-dicut", "/no/such/file"]).status.code(), Some(4));
    let e = djf(&["fixtures", "--name", "k4_all_ones", "--emit"]);
    let k4 = write(dir.path(), "k4.txt", std::str::from_utf8(&e.stdout).unwrap());
    let out = Command::new(env!("CARGO_BIN_EXE_djf"))
        .args(["decompose", &k4, "--family", "scd", "--tau", "3"])
        .env("DJF_SCD_SUPPORT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mixed_fixture_has_no_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let e = djf(&["fixtures", "--name", "schrijver_mixed", "--emit"]);
    assert!(e.status.success());
    let f = write(dir.path(), "m.txt", std::str::from_utf8(&e.stdout).unwrap());
    assert_eq!(djf(&["explore-mixed", &f, "--mode", "weak"]).status.code(), Some(2));
    assert_eq!(djf(&["explore-mixed", &f, "--mode", "ratio", "--k", "2"]).status.code(), Some(2));
}
