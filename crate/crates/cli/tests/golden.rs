//! Golden-file tests: one pinned output per command.

use std::path::Path;
use std::process::Command;

fn check(golden: &str, args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_euctower"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "command {args:?} exited with {:?}", out.status);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(golden);
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("read {golden}: {e}"));
    assert_eq!(
        out.stdout,
        expected,
        "output of {args:?} drifted from {golden}:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn golden_chain() {
    check("chain.json", &["chain", "5", "3"]);
}

#[test]
fn golden_partition() {
    check("partition.json", &["partition", "5", "3"]);
}

#[test]
fn golden_tower() {
    check("tower.json", &["tower", "2", "1"]);
}

#[test]
fn golden_verify_lemma() {
    check("verify-lemma.json", &["verify-lemma", "3", "2"]);
}

#[test]
fn golden_scan() {
    check("scan.json", &["scan", "6"]);
}

#[test]
fn golden_finite_prop1() {
    check("finite-prop1.json", &["finite-prop1", "2", "1", "--q", "2", "--seeds", "0..4"]);
}

#[test]
fn golden_finite_unfold() {
    check("finite-unfold.json", &["finite-unfold", "2", "1", "--q", "2", "--seeds", "0..2"]);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("euctower-golden-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chain.json");
    let out = Command::new(env!("CARGO_BIN_EXE_euctower"))
        .args(["chain", "5", "3", "--out", path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(out.stdout, written);
}

#[test]
fn failing_pair_exits_nonzero() {
    let out = Command::new(env!("CARGO_BIN_EXE_euctower"))
        .args(["chain", "6", "4"])
        .output()
        .expect("binary runs");
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not coprime"), "stderr: {err}");
}

#[test]
fn verify_lemma_rejects_non_coprime_with_message() {
    let out = Command::new(env!("CARGO_BIN_EXE_euctower"))
        .args(["verify-lemma", "4", "2"])
        .output()
        .expect("binary runs");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not coprime"));
}
