use std::path::PathBuf;
use std::process::{Command, Output};

use rttverify::cli::parse_report;
use rttverify::report::Status;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("spawn verify")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rttverify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_suite_exits_zero_with_json() {
    let out = verify(&["ybe", "--jobs", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out.stdout).unwrap();
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.suite, "ybe");
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.config["n"], "2");
    assert!(!r.config.contains_key("jobs"));
}

#[test]
fn negative_control_exits_one() {
    let out = verify(&["ybe", "--negative-control"]);
    assert_eq!(out.status.code(), Some(1));
    let r = parse_report(&out.stdout).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.checks.iter().any(|c| c.params.contains_key("flipped")));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(verify(&["ybe", "--n", "0"]).status.code(), Some(64));
    assert_eq!(
        verify(&["ybe", "--n", "3", "--case", "sp"]).status.code(),
        Some(64)
    );
    assert_eq!(verify(&["ybe", "--format", "xml"]).status.code(), Some(64));
    assert_eq!(verify(&["ybe", "--bogus"]).status.code(), Some(64));
    assert_eq!(verify(&[]).status.code(), Some(64));
    let out = verify(&["no-such-suite"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("twisted-phi"));
}

#[test]
fn unreadable_config_exits_74() {
    let missing = scratch("missing.conf");
    let out = verify(&["ybe", "--config", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn out_file_matches_stdout() {
    let path = scratch("ybe.json");
    let out = verify(&["ybe", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, verify(&["ybe"]).stdout);
}

#[test]
fn flags_override_the_config_file() {
    let path = scratch("ybe.conf");
    std::fs::write(&path, "# small run\nn = 3\ncase = o\nseed = 7\n").unwrap();
    let out = verify(&["ybe", "--config", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out.stdout).unwrap();
    assert_eq!(r.config["n"], "2");
    assert_eq!(r.config["case"], "o");
    assert_eq!(r.config["seed"], "7");
}

#[test]
fn bad_config_key_is_a_usage_error() {
    let path = scratch("bad.conf");
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(
        verify(&["ybe", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn markdown_report() {
    let out = verify(&["separation", "--format", "md", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# separation: pass"));
    assert!(text.contains("| check | params | verdict | certificate | detail |"));
    assert!(text.contains(" ms)"));
}

#[test]
fn timings_only_when_asked() {
    let plain = parse_report(&verify(&["ybe"]).stdout).unwrap();
    assert!(plain.checks.iter().all(|c| c.wall_ms.is_none()));
    let timed = parse_report(&verify(&["ybe", "--timings"]).stdout).unwrap();
    assert!(timed.checks.iter().all(|c| c.wall_ms.is_some()));
}
