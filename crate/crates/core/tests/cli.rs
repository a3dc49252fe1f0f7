use std::process::{Command, Output};

use serde_json::Value;

fn fncodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fncodes")).args(args).env_remove("FNCODES_BUDGET").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn walsh_histogram_of_gold() {
    let out = fncodes(&["walsh", "gold:i=1", "--m", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["class"]["class"], "almost_bent");
    // 31 components × 32 masks, half of them zero.
    assert_eq!(v["histogram"]["0"], 496);
    assert_eq!(v["histogram"]["64"], 496);
}

#[test]
fn bounds_for_the_hamming_code() {
    let v = json(&fncodes(&["bounds", "--n", "7", "--k", "4", "--d", "3", "--q", "2"]));
    assert_eq!(v["hamming"]["tight"], true);
    assert_eq!(v["hamming"]["distance"], "optimal");
    assert_eq!(v["hamming"]["dimension"], "optimal");
}

#[test]
fn vectorial_build_with_oracle() {
    let out = fncodes(&["build", "vectorial", "--f", "id", "--g", "gold:i=1", "--m", "3", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["prediction"]["matches"], true);
    assert_eq!(v["oracle"]["formula_mismatches"], 0);
    assert_eq!(v["oracle"]["trace_matches_matrix"], true);
}

#[test]
fn scalar_build_reports_the_norm_triple() {
    let v = json(&fncodes(&["build", "scalar", "--f", "tr", "--g", "tr_square", "--h", "norm", "--q", "2", "--m", "2"]));
    assert_eq!(v["params"]["n"], 33);
    assert_eq!(v["params"]["k"], 7);
    assert_eq!(v["params"]["d"], 8);
    assert_eq!(v["dual"]["params"]["d"], 3);
    assert_eq!(v["observed"]["table"], serde_json::json!([[0, 1], [8, 4], [16, 54], [17, 64], [24, 4], [32, 1]]));
}

#[test]
fn exit_codes() {
    // f = 0 is not a permutation, so the table does not apply.
    assert_eq!(fncodes(&["build", "vectorial", "--m", "3", "--f", "zero", "--g", "id"]).status.code(), Some(3));
    assert_eq!(fncodes(&["--budget", "100", "build", "scalar", "--m", "3", "--h", "trpower:d=3"]).status.code(), Some(4));
    let bad = fncodes(&["build", "scalar", "--m", "2", "--h", "tr(powr:d=3)"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position"));
    assert_eq!(fncodes(&["reproduce", "no-such-target"]).status.code(), Some(1));
}

#[test]
fn reproduce_reports_pass() {
    let out = fncodes(&["reproduce", "plateaued-pair:m=5:s=1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn css_pair_from_descriptors() {
    let v = json(&fncodes(&["css", "--m", "5", "--cx", "cf:gold:i=1", "--cz", "dual:cf:gold:i=1", "--check", "t"]));
    assert_eq!(v["css_valid"], true);
    assert_eq!(v["k"], 0);
    assert_eq!(v["t_transversal"], true);
    let v = json(&fncodes(&["css", "--q", "3", "--m", "3", "--cx", "cf:power:d=2", "--cz", "dual:cf:power:d=2", "--check", "phase:2"]));
    assert_eq!(v["phase_transversal"]["holds"], true);
}

#[test]
fn generator_export_round_trips() {
    let dir = std::env::temp_dir().join(format!("fncodes-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cf.json");
    let p = path.to_str().unwrap();
    let out = fncodes(&["build", "second-generic", "--m", "5", "--f", "gold:i=1", "--export", p]);
    assert!(out.status.success());
    let v = json(&fncodes(&["css", "--cx", p, "--cz", p]));
    // C_F is not self-dual, so (C_F, C_F) is not a CSS pair.
    assert_eq!(v["css_valid"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}
