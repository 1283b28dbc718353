use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mixvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixvol")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixvol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_tuple(name: &str, body: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SQUARE_AND_RECT: &str = r#"{"role":"generic","bodies":[
  {"dim":2,"vertices":[["0","0"],["1","0"],["0","1"],["1","1"]]},
  {"dim":2,"vertices":[["0","0"],["2","0"],["0","1"],["2","1"]]}]}"#;

#[test]
fn delta_lists_points_in_canonical_order() {
    let out = mixvol(&["delta", "--n", "3", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 6);
    assert_eq!(v["points"][0], serde_json::json!([2, 0, 0]));
    assert_eq!(v["points"][5], serde_json::json!([0, 0, 2]));
}

#[test]
fn table_format_and_output_file() {
    let path = scratch("delta.txt");
    let out = mixvol(&["delta", "--n", "2", "--d", "2", "--format", "table", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "(2,0)\n(1,1)\n(0,2)\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mixvol(&["delta", "--n", "2"]).status.code(), Some(2));
    assert_eq!(mixvol(&["bound", "af", "--d", "3", "--p", "4,0,0"]).status.code(), Some(2));
    assert_eq!(mixvol(&["ineq", "gen", "--family", "nope", "--d", "3"]).status.code(), Some(2));
    let bad = write_tuple("bad.json", "{ not json");
    assert_eq!(mixvol(&["mv", "compute", "--bodies", &bad]).status.code(), Some(2));
}

#[test]
fn dimension_cap_is_read_from_the_environment() {
    let body = r#"{"role":"generic","bodies":[
      {"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]},
      {"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]}]}"#;
    let path = write_tuple("simplex2.json", body);
    let capped = Command::new(env!("CARGO_BIN_EXE_mixvol"))
        .args(["mv", "compute", "--bodies", &path])
        .env("MIXVOL_MAX_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let out = mixvol(&["mv", "compute", "--bodies", &path]);
    assert_eq!(json(&out)["mixed_volume"], "1");
}

#[test]
fn mixed_volume_of_square_and_rectangle() {
    let path = write_tuple("sq_rect.json", SQUARE_AND_RECT);
    let out = mixvol(&["mv", "compute", "--bodies", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["mixed_volume"], "3");
    let id = mixvol(&["verify", "identity", "--bodies", &path]);
    assert_eq!(id.status.code(), Some(0));
    assert_eq!(json(&id)["holds"], true);
    let cfg = mixvol(&["verify", "config", "--bodies", &path]);
    assert_eq!(cfg.status.code(), Some(0));
    assert_eq!(json(&cfg)["ok"], true);
}

#[test]
fn bound_commands_agree_with_hand_values() {
    let af = json(&mixvol(&["bound", "af", "--d", "4", "--p", "2,2,0,0", "--certificate"]));
    assert_eq!(af["value"], "4");
    assert_eq!(af["certificate_checked"], true);
    assert!(af["certificate"].is_object());

    let path = json(&mixvol(&["bound", "path", "--d", "3", "--p", "0,3,0"]));
    assert_eq!(path["slope"], "3");
    assert_eq!(path["replayed"], true);

    let mink = json(&mixvol(&["bound", "mink", "--d", "3", "--m", "2", "--method", "af"]));
    assert_eq!(mink["value"], "216");
}

#[test]
fn rand_tuple_is_a_function_of_the_seed() {
    let args = ["rand-tuple", "--d", "2", "--n", "3", "--box", "5", "--points", "4", "--full-dim"];
    let a = mixvol(&[&args[..], &["--seed", "11"]].concat());
    let b = mixvol(&[&args[..], &["--seed", "11"]].concat());
    let c = mixvol(&[&args[..], &["--seed", "12"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);

    let path = scratch("triple.json");
    std::fs::write(&path, &a.stdout).unwrap();
    let heine = mixvol(&["heine", "--bodies", path.to_str().unwrap()]);
    assert_eq!(heine.status.code(), Some(0));
    assert_eq!(json(&heine)["satisfied"], true);
}

#[test]
fn raw_heine_matrix_is_a_query() {
    let out = mixvol(&["heine", "--matrix", "1,1,2;1,1,1;2,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["det"], "-1");
    assert_eq!(v["satisfied"], false);
    assert_eq!(mixvol(&["heine", "--matrix", "1,2,3;4,5,6;7,8,9"]).status.code(), Some(2));
}

#[test]
fn golden_mismatch_exits_1() {
    let path = scratch("wrong_golden.json");
    std::fs::write(&path, "{}\n").unwrap();
    let out = mixvol(&["cone", "vertices", "--d", "3", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["golden"]["matches"], false);
}

#[test]
fn ineq_gen_log_form() {
    let out = mixvol(&["ineq", "gen", "--family", "af", "--d", "2", "--log"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 1);
}

#[test]
fn extremal_and_counterexample_confirm() {
    let ex = mixvol(&["extremal", "--d", "2", "--m", "3", "--ell", "2"]);
    assert_eq!(ex.status.code(), Some(0));
    assert_eq!(json(&ex)["prefix_volume"], "16");
    let ce = mixvol(&["counterexample", "--d", "4"]);
    assert_eq!(ce.status.code(), Some(0));
}
