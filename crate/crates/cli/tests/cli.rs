use std::process::Command;

fn run(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_moridream")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "catalog:p2"]).0, Some(0));
    assert_eq!(run(&["no-such-command"]).0, Some(1));
    assert_eq!(run(&["analyze", "catalog:no-such-fan"]).0, Some(2));
    assert_eq!(run(&["verify", "catalog:p2"]).0, Some(2));
    assert_eq!(run(&["chambers", "catalog:blpt-p1x4", "--max", "3"]).0, Some(4));
    assert_eq!(run(&["mmp", "catalog:p2", "--divisor=-1,0,0"]).0, Some(5));
}

#[test]
fn mmp_on_the_flip_model() {
    let (code, out) = run(&["mmp", "catalog:fano-flip-model", "--divisor", "ray:8"]);
    assert_eq!(code, Some(0));
    assert_eq!(out.lines().filter(|l| l.contains("flip")).count(), 4, "{out}");
    assert!(out.contains("divisorial"), "{out}");
}

#[test]
fn json_output_parses() {
    let (code, out) = run(&["--json", "analyze", "catalog:fano-flip-model"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rho"], 5);
}

#[test]
fn export_round_trips_through_a_file() {
    let (_, text) = run(&["export", "catalog:blpt2-p3"]);
    let path = std::env::temp_dir().join(format!("moridream-cli-{}.fan", std::process::id()));
    std::fs::write(&path, &text).unwrap();
    let (code, from_file) = run(&["analyze", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, Some(0));
    assert_eq!(from_file, run(&["analyze", "catalog:blpt2-p3"]).1);
}
