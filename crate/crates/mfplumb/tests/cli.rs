//! End-to-end tests of the command-line interface: exit codes, byte-stable
//! documents against the checked-in goldens, and stdin/stdout piping.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: Option<&str>) -> Outcome {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mfplumb"))
        .args(args)
        .stdin(if stdin.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    let output = child.wait_with_output().unwrap();
    Outcome {
        code: output.status.code().unwrap(),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
    }
}

fn path_arg(name: &str) -> String {
    fixture(name).to_str().unwrap().to_owned()
}

#[test]
fn generated_documents_are_byte_stable() {
    let out = run(&["gen", "tab", "--a", "3", "--b", "2"], None);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, fixture_text("tab_3_2.json"));
    let out = run(&["gen", "tab", "--a", "7", "--b", "5"], None);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, fixture_text("tab_7_5.json"));
}

#[test]
fn solve_is_idempotent_on_decorated_documents() {
    let out = run(&["solve", &path_arg("tab_7_5.json")], None);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, fixture_text("tab_7_5.json"));
}

#[test]
fn construct_matches_the_golden_documents() {
    for (input, golden) in [
        ("tab_3_2.json", "tab_3_2.plumb.json"),
        ("omni.json", "omni.plumb.json"),
    ] {
        let out = run(&["construct", &path_arg(input)], None);
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        assert_eq!(out.stdout, fixture_text(golden));
    }
}

#[test]
fn export_dot_matches_the_golden() {
    let out = run(
        &["export", &path_arg("tab_3_2.plumb.json"), "--format", "dot"],
        None,
    );
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, fixture_text("tab_3_2.dot"));
}

#[test]
fn export_native_round_trips() {
    let out = run(
        &["export", &path_arg("omni.plumb.json"), "--format", "native"],
        None,
    );
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, fixture_text("omni.plumb.json"));
}

#[test]
fn the_pipeline_runs_over_stdin() {
    let gen = run(&["gen", "tab", "--a", "5", "--b", "3"], None);
    assert_eq!(gen.code, 0);
    let built = run(&["construct"], Some(&gen.stdout));
    assert_eq!(built.code, 0, "stderr: {}", built.stderr);
    let checked = run(&["check", "-"], Some(&built.stdout));
    assert_eq!(checked.code, 0);
    assert!(checked.stdout.starts_with("ok:"), "{}", checked.stdout);
}

#[test]
fn validate_accepts_the_decorated_fixture() {
    let out = run(&["validate", &path_arg("tab_3_2.json")], None);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "ok: structure and balance\n");
}

#[test]
fn validate_reports_balance_violations() {
    let out = run(&["validate", &path_arg("bad_unbalanced.json")], None);
    assert_eq!(out.code, 1);
    assert!(
        out.stderr
            .contains("violation: m balance fails at v2 with residual -1"),
        "{}",
        out.stderr
    );
}

#[test]
fn check_rejects_a_broken_system() {
    let out = run(&["check", &path_arg("bad_residual.plumb.json")], None);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.contains("identity fails at lone: residual -2"),
        "{}",
        out.stderr
    );
}

#[test]
fn simplify_preserves_the_identity() {
    let out = run(&["simplify", &path_arg("tab_3_2.plumb.json")], None);
    assert_eq!(out.code, 0);
    assert_eq!(out.stderr, "blown down 9 vertices\n");
    let checked = run(&["check"], Some(&out.stdout));
    assert_eq!(checked.code, 0, "stderr: {}", checked.stderr);
}

#[test]
fn partition_reports_the_component_invariants() {
    let out = run(&["partition", &path_arg("omni.json")], None);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["w1"], serde_json::json!(["v1", "v2", "v3"]));
    assert_eq!(report["w2"], serde_json::json!(["v4", "v5", "v6"]));
    let component = &report["components"][0];
    assert_eq!(component["d"], 1);
    assert_eq!(component["genus"], 17);
    assert_eq!(component["euler"], -90);
}

#[test]
fn usage_errors_exit_with_64() {
    assert_eq!(run(&["bogus"], None).code, 64);
    assert_eq!(run(&["construct", "--format", "dot"], None).code, 64);
    assert_eq!(run(&["--help"], None).code, 0);
    assert_eq!(run(&["--version"], None).code, 0);
}

#[test]
fn malformed_documents_exit_with_65() {
    for command in ["validate", "construct", "check"] {
        let out = run(&[command], Some("{ not json"));
        assert_eq!(out.code, 65, "{command}: {}", out.stderr);
    }
}

#[test]
fn missing_files_exit_with_66() {
    let out = run(&["construct", "/nonexistent/input.json"], None);
    assert_eq!(out.code, 66);
}
