use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use projtri::{GradedRing, RingSpec};
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn projtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projtri"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_z4_is_positive() {
    let out = projtri(&["classify", "rings/z4.ring", "--n", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["is_delta"], true);
    assert_eq!(v["factors"][0]["kind"], "TMod4");
}

#[test]
fn classify_f3x_has_wrong_characteristic() {
    let out = projtri(&["classify", "rings/f3x.ring", "--n", "0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["is_delta"], false);
    assert_eq!(v["factors"][0]["reason"], "WrongCharacteristic");
}

#[test]
fn ggh_z9_fails_condition_two() {
    let out = projtri(&["ggh", "--p", "3", "--n", "2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["condition1"], true);
    assert_eq!(v["condition2"], false);
    assert_eq!(v["cofiber_dims"]["0"], 1);
    assert_eq!(v["x_ranks"]["1"], 0);
}

#[test]
fn ggh_accepts_negative_window() {
    let out = projtri(&["ggh", "--p", "3", "--n", "1", "--window", "-4:4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("holds"));
}

#[test]
fn qf_flags_the_non_gorenstein_ring() {
    let out = projtri(&["qf", "rings/f2xy.ring", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["quasi_frobenius"], false);
    assert!(v["witness"].is_string());
    assert_eq!(projtri(&["qf", "rings/z8.ring"]).status.code(), Some(0));
}

#[test]
fn heller_on_shipped_modules() {
    let out = projtri(&[
        "heller",
        "rings/f2x.ring",
        "modules/f2x_residue.module",
        "modules/f2x_mixed.module",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["modules"].as_array().unwrap().len(), 2);
    assert_eq!(v["modules"][1]["cards"][0], "8");
}

#[test]
fn dg_verify_is_reproducible() {
    let args = [
        "dg-verify",
        "--p",
        "3",
        "--i",
        "1",
        "--n",
        "1",
        "--trials",
        "4",
        "--seed",
        "11",
        "--json",
    ];
    let a = projtri(&args);
    let b = projtri(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["homology"]["0"], 1);
    assert_eq!(v["homology"]["2"], 0);
}

#[test]
fn dg_verify_reports_parity_obstruction() {
    let out = projtri(&["dg-verify", "--p", "3", "--i", "0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parity"));
}

#[test]
fn selftest_passes() {
    assert_eq!(projtri(&["selftest"]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        projtri(&["classify", "rings/missing.ring"]).status.code(),
        Some(2)
    );
    assert_eq!(
        projtri(&["classify", "rings/z4.ring", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        projtri(&["ggh", "--p", "3", "--n", "1", "--window", "4:-4"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, "{\n  \"characteristic\": 2,\n  \"basis\": [\n    {\"name\": \"one\" \"degree\": 0}\n  ]\n}\n").unwrap();
    let out = projtri(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn corpus_round_trips() {
    let mut count = 0;
    for entry in std::fs::read_dir(root().join("rings")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("ring") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = RingSpec::from_json(&text).unwrap();
        assert_eq!(
            RingSpec::from_json(&spec.to_json()).unwrap(),
            spec,
            "{}",
            path.display()
        );
        let ring = GradedRing::from_spec(&spec).unwrap();
        let again = GradedRing::from_spec(&ring.to_spec()).unwrap();
        assert_eq!(again.to_spec(), ring.to_spec(), "{}", path.display());
        count += 1;
    }
    assert!(count >= 15);
}
