//! End-to-end checks of the `dsr` binary: exit codes, output formats, and
//! the solve -> verify round trip.

use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn dsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn dsr_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_dsr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const P3_NO: &str = "p ds 3 2\ne 1 2\ne 2 3\ns 1 3\nt 2\nk 2\n";

#[test]
fn decide_no_instance_exits_one() {
    let out = dsr_stdin(&["decide", "--class", "tree"], P3_NO);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NO MINIMAL_ENDPOINT_AT_K\n");
}

#[test]
fn decide_yes_with_slack() {
    let input = "p ds 3 2\ne 1 2\ne 2 3\ns 1 3\nt 2\nk 3\n";
    let out = dsr_stdin(&["decide", "--class", "tree"], input);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "YES SLACK_K\n");
}

#[test]
fn parse_error_exits_two() {
    let out = dsr_stdin(&["decide", "--class", "tree"], "p ds 2 1\ne 1 1\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn wrong_class_without_fallback_exits_two() {
    // C4 is not a tree
    let input = "p ds 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ns 1 3\nt 2 4\nk 3\n";
    let out = dsr_stdin(&["decide", "--class", "tree"], input);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_fallback_handles_unsupported_class() {
    // C5 is neither tree, cograph, nor supplied with intervals
    let input = "p ds 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ns 1 3\nt 2 4\nk 3\n";
    let out = dsr_stdin(&["decide", "--oracle-fallback"], input);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "YES ORACLE\n");
}

#[test]
fn json_format_is_versioned() {
    let out = dsr_stdin(&["decide", "--class", "tree", "--format", "json"], P3_NO);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["answer"], "NO");
    assert_eq!(v["reason"], "MINIMAL_ENDPOINT_AT_K");
    assert!(v["stats"]["states_expanded"].is_number());
    assert!(v["stats"]["time_ms"].is_number());
}

#[test]
fn solve_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("inst.dsr");
    let seq = dir.path().join("out.seq");
    fs::write(
        &instance,
        "p ds 4 3\ne 1 2\ne 2 3\ne 3 4\ns 2 3\nt 1 3\nk 3\n",
    )
    .unwrap();
    let out = dsr(&[
        "solve",
        instance.to_str().unwrap(),
        "--class",
        "tree",
        "--emit-sequence",
        seq.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(seq.exists());

    let out = dsr(&[
        "verify",
        instance.to_str().unwrap(),
        "--sequence",
        seq.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(stdout(&out), "VALID\n");
}

#[test]
fn verify_rejects_wrong_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("inst.dsr");
    let seq = dir.path().join("bad.seq");
    fs::write(&instance, "p ds 3 2\ne 1 2\ne 2 3\ns 1 2\nt 2\nk 2\n").unwrap();
    fs::write(&seq, "s 1 2\n- 2\n").unwrap();
    let out = dsr(&[
        "verify",
        instance.to_str().unwrap(),
        "--sequence",
        seq.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("INVALID"));
}

#[test]
fn generate_decide_pipeline() {
    let out = dsr(&[
        "generate", "--class", "tree", "--n", "8", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let instance = stdout(&out);
    let decided = dsr_stdin(&["decide", "--class", "tree"], &instance);
    assert_eq!(decided.status.code(), Some(0), "{decided:?}");
}

#[test]
fn generate_is_deterministic() {
    let a = dsr(&["generate", "--class", "interval", "--n", "9", "--seed", "7"]);
    let b = dsr(&["generate", "--class", "interval", "--n", "9", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("i 1 "));
}

#[test]
fn oracle_command_agrees_with_decide() {
    let out = dsr_stdin(&["oracle"], P3_NO);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NO ORACLE\n");
}

#[test]
fn label_tree_emits_vertices_and_cells() {
    let out = dsr_stdin(
        &["label", "--class", "tree"],
        "p ds 4 3\ne 1 2\ne 2 3\ne 3 4\n",
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("v 1 2\nv 2 3\nv 3 2\nv 4 1\n"), "{text}");
    assert!(text.contains("cell 1 3 4\ncell 2 1 2\n"), "{text}");
}

#[test]
fn label_interval_and_cograph() {
    let out = dsr_stdin(
        &["label", "--class", "interval"],
        "p ds 3 2\ne 1 2\ne 2 3\ni 1 0 1\ni 2 0.5 1.5\ni 3 1.2 2\n",
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("v 1 1\nv 2 2\nv 3 3\n"), "{text}");
    assert!(text.contains("cell 1 1 2 3\n"), "{text}");

    let out = dsr_stdin(
        &["label", "--class", "cograph"],
        "p ds 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n",
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("canonical 1 2\n"), "{text}");
    assert!(text.contains("side1 1 3\n") && text.contains("side2 2 4\n"), "{text}");
}

#[test]
fn reduce_writes_instance_and_map_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let vcr = dir.path().join("vcr.in");
    let out_path = dir.path().join("reduced.dsr");
    // K2 with covers {1} and {2}
    fs::write(&vcr, "p ds 2 1\ne 1 2\ns 1\nt 2\nk 2\n").unwrap();
    let out = dsr(&[
        "reduce",
        vcr.to_str().unwrap(),
        "--kind",
        "vcr-dsr",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let reduced = fs::read_to_string(&out_path).unwrap();
    assert!(reduced.starts_with("p ds 3 3\n"), "{reduced}");
    let map = fs::read_to_string(Path::new(&format!(
        "{}.map",
        out_path.to_str().unwrap()
    )))
    .unwrap();
    assert_eq!(map, "orig 2\ng 3 e 1 2\n");
}

#[test]
fn reduce_pipeline_to_bipartite() {
    let dir = tempfile::tempdir().unwrap();
    let vcr = dir.path().join("vcr.in");
    let split = dir.path().join("split.dsr");
    let bip = dir.path().join("bip.dsr");
    fs::write(&vcr, "p ds 3 2\ne 1 2\ne 2 3\ns 2\nt 2\nk 1\n").unwrap();
    let out = dsr(&[
        "reduce",
        vcr.to_str().unwrap(),
        "--kind",
        "vcr-split",
        "-o",
        split.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = dsr(&[
        "reduce",
        split.to_str().unwrap(),
        "--kind",
        "split-bipartite",
        "-o",
        bip.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = fs::read_to_string(&bip).unwrap();
    // original k = 1 grows by one for the apex vertex
    assert!(text.contains("k 2\n"), "{text}");
}

#[test]
fn solve_emits_sequence_in_json() {
    let input = "p ds 4 3\ne 1 2\ne 2 3\ne 3 4\ns 2 3\nt 1 3\nk 3\n";
    let out = dsr_stdin(&["solve", "--class", "tree", "--format", "json"], input);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["answer"], "YES");
    assert!(v["sequence"]["moves"].is_array());
}
