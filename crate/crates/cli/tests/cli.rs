use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn berkram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berkram")).args(args).output().expect("binary runs")
}

fn berkram_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_berkram"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn reports_match_golden_files_byte_for_byte() {
    let cases: [(&[&str], &str); 4] = [
        (&["example", "6.3", "--p", "3"], "example_6_3_p3.json"),
        (&["tau", "--map", "ex63", "--p", "3", "--point", "0,0"], "tau_ex63.json"),
        (&["critical", "--map", "ex63", "--p", "3"], "critical_ex63.json"),
        (
            &["profile", "--map", "ex63", "--p", "3", "--center", "0", "--s0", "0", "--s1", "1", "--which", "tfrak"],
            "profile_ex63.json",
        ),
    ];
    for (args, file) in cases {
        let first = berkram(args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(stdout(&first), golden(file), "{args:?}");
        assert_eq!(first.stdout, berkram(args).stdout, "{args:?} is not stable across runs");
    }
}

#[test]
fn worked_examples_exit_zero() {
    for args in [
        &["example", "6.1", "--p", "3"][..],
        &["example", "6.1", "--p", "2"],
        &["example", "6.1", "--p", "7"],
        &["example", "6.2", "--n", "1"],
        &["example", "6.2", "--n", "6"],
        &["example", "6.3", "--p", "5"],
    ] {
        let out = berkram(args);
        assert!(out.status.success(), "{args:?}: {}", stdout(&out));
        assert_eq!(json(&out)["passed"], Value::Bool(true));
    }
    let v = json(&berkram(&["example", "6.1", "--p", "3"]));
    assert_eq!(v["checks"][0]["actual"], "1/2");
}

#[test]
fn tau_at_the_gauss_point() {
    let v = json(&berkram(&["tau", "--map", "ex63", "--p", "3", "--point", "0,0"]));
    assert_eq!(v["tau"], "1/2");
    assert_eq!(v["schemaVersion"], 1);
}

#[test]
fn rationals_are_canonical_on_output() {
    let v = json(&berkram(&["wronskian", "--map", r#"{"f": ["2/4", 0, 1], "g": [1]}"#]));
    assert_eq!(v["map"]["f"][0], "1/2");
}

#[test]
fn errors_are_json_objects_with_nonzero_exit() {
    let out = berkram(&["wronskian", "--map", r#"{"f": ["1/0", 0, 1]}"#]);
    assert!(!out.status.success());
    assert_eq!(json(&out)["error"]["kind"], "SchemaError");

    let out = berkram(&["tau", "--domain", "fpt", "--map", r#"{"f": [0, 0, 0, 1]}"#, "--point", "0,0"]);
    assert!(!out.status.success());
    assert_eq!(json(&out)["error"]["kind"], "InseparableMap");

    let out = berkram(&["tau", "--map", "/no/such/file.json", "--point", "0,0"]);
    assert_eq!(json(&out)["error"]["kind"], "IOError");

    let out = berkram(&["frobnicate"]);
    assert!(!out.status.success());
    assert_eq!(json(&out)["error"]["kind"], "SchemaError");

    let out = berkram(&["hulldist", "--map", "ex61", "--point", "0,inf"]);
    assert!(!out.status.success());
}

#[test]
fn profile_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = berkram(&[
        "profile",
        "--map",
        "ex63",
        "--p",
        "3",
        "--center",
        "0",
        "--s0",
        "0",
        "--s1",
        "1",
        "--csv",
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s,value\n0,1/2\n1/4,0\n1,0\n");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<circle").count(), 3);
    assert!(text.contains("s = 1/4, τ = 0"));
}

#[test]
fn maps_load_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    std::fs::write(&path, r#"{"domain": {"tag": "Qp", "p": 3}, "f": [3, 0, 0, 0, 1], "g": [0, 1]}"#).unwrap();
    let from_file = json(&berkram(&["tau", "--map", path.to_str().unwrap(), "--point", "0,0"]));
    assert_eq!(from_file["tau"], "1/2");
}

#[test]
fn job_specs_run_like_direct_invocations() {
    let spec = r#"{"command": "tau", "domain": {"tag": "Qp", "p": 3}, "map": "ex63", "params": {"point": "0,0"}}"#;
    let out = berkram_stdin(&["run", "-"], spec);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("tau_ex63.json"));

    let spec = r#"{"command": "example", "domain": {"tag": "Fpt", "p": 3}, "params": {"which": "6.2", "n": 3}}"#;
    let out = berkram_stdin(&["run", "-"], spec);
    assert!(out.status.success(), "{}", stdout(&out));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, r#"{"command": "hulldist", "map": "ex61", "params": {"point": "0,0"}}"#).unwrap();
    assert_eq!(json(&berkram(&["run", path.to_str().unwrap()]))["dist"], "1/2");

    let out = berkram_stdin(&["run", "-"], r#"{"command": "rm -rf"}"#);
    assert_eq!(json(&out)["error"]["kind"], "SchemaError");
    let out = berkram_stdin(&["run", "-"], "not json");
    assert_eq!(json(&out)["error"]["kind"], "SchemaError");
}

#[test]
fn remaining_commands_produce_reports() {
    let v = json(&berkram(&["binomlemma", "--m", "9", "--p", "3"]));
    assert_eq!((v["min"].as_str(), v["argmin"].as_u64()), (Some("-1/2"), Some(3)));
    let v = json(&berkram(&["fuzz", "--poly", "[0,0,0,1,3]", "--delta", "9"]));
    assert_eq!(v["polygon"]["vertices"][0], serde_json::json!([1, "5"]));
    assert_eq!(v["agrees"], true);
    let v = json(&berkram(&["mult", "--map", "ex61", "--point", "0,0"]));
    assert_eq!(v["multiplicity"], 3);
    let v = json(&berkram(&["mult", "--map", "ex61", "--point", "inf"]));
    assert_eq!(v["multiplicity"], 3);
    let v = json(&berkram(&["ramified", "--map", "ex61", "--point", "0,1"]));
    assert_eq!(v["ramified"], false);
    let v = json(&berkram(&["tube", "--map", "ex61", "--point", "0,0", "--radius", "1/2"]));
    assert_eq!(v["inTube"], true);
    let v = json(&berkram(&["tfrak", "--map", "ex63", "--point", "0,1"]));
    assert_eq!(v["tfrak"], "-1");
    let out = berkram(&["thmD", "--map", "ex61", "--p", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["maxDist"], "1/2");
    let v = json(&berkram(&["rolle", "--map", "ex61", "--center", "0", "--s0", "0"]));
    assert_eq!((v["verdict"].as_bool(), v["shift"].as_str()), (Some(true), Some("1/2")));
    let v = json(&berkram(&["surjective", "--map", r#"{"f": [1], "g": [0, 0, 1]}"#, "--center", "0", "--s0", "0"]));
    assert_eq!(v["surjectivity"]["polesInDisk"], 2);
    let v = json(&berkram(&["newton", "--poly", "[0, 1, 0, 1]"]));
    assert_eq!(v["polygon"]["startIndex"], 1);
    let v = json(&berkram(&["aux", "--map", "ex63", "--p", "3"]));
    assert_eq!(v["degree"], 4);
}
