use std::process::Command;

use equivar::cli::{run, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("equivar").chain(args.iter().copied()).map(std::ffi::OsString::from);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn dimension(line: &str) -> u64 {
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    v["dimension"].as_u64().unwrap()
}

#[test]
fn classify_reports_dimensions() {
    let (code, out, _) = call(&["classify", "--m", "3", "--p", "1", "--q", "0", "--k", "1", "--l", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dimension(out.lines().next().unwrap()), 1);

    let (code, out, _) = call(&["classify", "--m", "3", "--p", "0", "--q", "0", "--k", "0", "--l", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dimension(out.trim()), 1);
}

#[test]
fn both_paths_emit_one_line_each() {
    let (code, out, _) =
        call(&["classify", "--m", "3", "--p", "0", "--q", "0", "--k", "1", "--l", "1", "--path", "both"]);
    assert_eq!(code, EXIT_OK);
    let paths: Vec<String> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["path"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(paths, ["direct", "ansatz"]);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(call(&["classify", "--m", "2", "--p", "2", "--q", "3", "--k", "0", "--l", "0"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "--m", "3", "--p", "x"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "nope"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "--format", "yaml"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn csv_and_markdown_formats() {
    let (code, out, _) = call(&["classify", "--m", "3", "--p", "0", "--q", "0", "--k", "0..1", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m,p,q,k,l,path,dimension,stabilized,borderline");
    assert_eq!(lines[1], "3,0,0,0,0,direct,1,true,false");
    assert_eq!(lines[2], "3,0,0,1,1,direct,2,true,false");

    let (code, out, _) = call(&["table", "--m", "3", "--p", "0..1", "--k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("match"));
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn verify_and_props_pass() {
    for name in ["id", "i0", "dstar", "K1p", "K20", "dstarK"] {
        let (code, out, _) = call(&["verify", name, "--m", "3", "--count", "4", "--seed", "5"]);
        assert_eq!(code, EXIT_OK, "{name}: {out}");
    }
    assert_eq!(call(&["verify", "K1p", "--m", "1", "--p", "1"]).0, EXIT_USAGE);
    let (code, _, _) = call(&["props", "--count", "3", "--seed", "9"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn out_flag_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# cell\nm = 3\np = 1\nq = 0\nk = 1\nl = 2\n").unwrap();
    let (code, out, _) = call(&["classify", "--config", config.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&report).unwrap();
    assert_eq!(dimension(written.trim()), 1);

    std::fs::write(&config, "colour = blue\n").unwrap();
    assert_eq!(call(&["classify", "--config", config.to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_equivar");
    let args =
        ["classify", "--m", "3", "--p", "0..1", "--q-offset", "0", "--k", "0..1", "--path", "both", "--seed", "3"];
    let runs: Vec<Vec<u8>> = ["1", "4", "4"]
        .iter()
        .map(|threads| {
            let output = Command::new(bin).args(args).env("EQUIVAR_THREADS", threads).output().unwrap();
            assert!(output.status.success());
            output.stdout
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
}

#[test]
fn binary_reports_usage_errors() {
    let bin = env!("CARGO_BIN_EXE_equivar");
    let output = Command::new(bin).args(["classify", "--m", "2", "--p", "2", "--q", "3"]).output().unwrap();
    assert_eq!(output.status.code(), Some(EXIT_USAGE));
    assert!(!output.stderr.is_empty());
}

#[test]
fn borderline_disagreement_is_noted_not_fatal() {
    let (code, out, _) = call(&["classify", "--m", "3", "--p", "2", "--q", "2", "--k", "2", "--l", "2", "--path", "both"]);
    assert_eq!(code, EXIT_OK);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["borderline"], true);
        assert!(v["notes"][0].as_str().unwrap().contains("disagree"));
    }
}
