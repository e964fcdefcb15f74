mod common;

use common::scenario;
use supercrossed::cli;

#[test]
fn scenarios_match_goldens() {
    let all = scenario::load();
    assert!(all.len() >= 30);
    let failures: Vec<String> = all.iter().filter_map(|s| scenario::check(s).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn unknown_command_is_a_usage_error() {
    let out = cli::run(["supercrossed", "frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
}

#[test]
fn unknown_argument_is_a_usage_error() {
    let out = cli::run(["supercrossed", "bound", "--element", "a1"]);
    assert_eq!(out.code, 2);
}

#[test]
fn help_exits_cleanly() {
    let out = cli::run(["supercrossed", "--help"]);
    assert_eq!(out.code, 0);
    for cmd in ["validate", "nf", "dagger", "xp-mul", "xp-star", "gamma-check", "rep-check", "hat", "bound", "seminorm", "roundtrip", "ccr-report", "orbit-deriv"] {
        assert!(out.stdout.contains(cmd), "help lacks {cmd}");
    }
}

#[test]
fn builtin_catalog_is_the_default_workspace() {
    let out = cli::run(["supercrossed", "validate", "--pair", "z2odd"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn domain_errors_are_reported_as_json() {
    let out = cli::run(["supercrossed", "bound", "--elem", "a1", "--file", "catalog/structure.sc", "--file", "catalog/hc.sc"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let bad = cli::run(["supercrossed", "orbit-deriv", "--elem", "mixed", "--x", "x"]);
    assert_eq!(bad.code, 1);
    let v: serde_json::Value = serde_json::from_str(&bad.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert!(v["error"].is_string());
}

#[test]
fn out_flag_writes_the_same_document() {
    let dir = std::env::temp_dir().join(format!("supercrossed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bound.json");
    let to_file = cli::run(["supercrossed", "bound", "--elem", "a1", "--out", path.to_str().unwrap()]);
    assert_eq!(to_file.code, 0);
    assert!(to_file.stdout.is_empty());
    let direct = cli::run(["supercrossed", "bound", "--elem", "a1"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let dir = std::env::temp_dir().join(format!("supercrossed-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dup.sc");
    std::fs::write(&path, "(algebra a (basis (z even)))\n(algebra a (basis (z even)))\n").unwrap();
    let out = cli::run(["supercrossed", "--file", path.to_str().unwrap(), "validate", "--algebra", "a"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("dup.sc:2:"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}
