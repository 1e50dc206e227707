//! Command-line behaviour: exit codes, report formats, path files and
//! determinism.

use std::path::PathBuf;
use std::process::Command;

use ecl_cli::{run, Outcome};
use serde_json::Value;

fn ecl(args: &[&str]) -> Outcome {
    run(std::iter::once("ecl").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", o.stdout))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ecl-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn report_envelope() {
    let o = ecl(&["roots", "--type", "G2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["schema"], "ecl-report/1");
    assert_eq!(v["subcommand"], "roots");
    assert_eq!(v["config"]["subcommand"], "roots");
    assert_eq!(v["config"]["emit"], "json");
    assert_eq!(v["passed"], true);
    assert_eq!(v["data"]["dual_coxeter"], "4");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "anchor",
        "checks",
        "config",
        "data",
        "passed",
        "schema",
        "subcommand",
        "truncation",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    for c in v["checks"].as_array().unwrap() {
        assert!(c["status"] == "asserted" || c["status"] == "probe");
        assert!(c["passed"].is_boolean());
    }
}

#[test]
fn constant_for_a3_is_24() {
    let o = ecl(&["constant-c", "--type", "A", "--rank", "3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["data"]["tildeC"], "24");
    // F4 fails three-way agreement: exit 1 with a normal report.
    let o = ecl(&["constant-c", "--type", "F4"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["passed"], false);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["theta-check", "--tau", "0.3-1i"][..],
        &["theta-check", "--tau", "0.3"],
        &["theta-check", "--points", "0"],
        &["k-coeffs", "--tau", "nonsense"],
        &["roots", "--type", "H", "--rank", "3"],
        &["roots", "--type", "A"],
        &["roots", "--type", "E6", "--rank", "7"],
        &["constant-c", "--type", "A", "--rank", "1"],
        &["flatness", "--model", "nope"],
        &["flatness", "--model", "cherednik-finite-sl3", "--c", "2/0"],
        &["flatness", "--model", "cherednik-finite-sl3", "--point", "0.1,0.2"],
        &["verify-ddca", "--suite", "nope"],
        &["verify-ddca", "--reading", "loose"],
        &["frobnicate"],
        &["roots", "--no-such-flag"],
    ] {
        let o = ecl(args);
        assert_eq!(o.code, 2, "{args:?}: {}", o.stderr);
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_and_version_succeed() {
    let o = ecl(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("monodromy"));
    assert_eq!(ecl(&["--version"]).code, 0);
}

#[test]
fn theta_and_kernel_campaigns_pass() {
    assert_eq!(ecl(&["theta-check", "--points", "10"]).code, 0);
    assert_eq!(ecl(&["k-coeffs"]).code, 0);
}

#[test]
fn flatness_models() {
    let o = ecl(&["flatness", "--model", "cherednik-finite-sl3"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["data"]["dim"], 4);
    assert!(v["data"]["relative_curvature"].as_f64().unwrap() < 1e-8);
    // The negative control fails.
    assert_eq!(ecl(&["flatness", "--model", "adjoint-sl3"]).code, 1);
    // The small representation passes what it can check and says what it skipped.
    let v = json(&ecl(&["flatness", "--model", "cherednik-sl3"]));
    let skipped = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().contains("skipped"))
        .count();
    assert!(skipped > 0);
}

#[test]
fn reading_selects_the_asserted_form() {
    let stated = ecl(&["verify-ddca", "--suite", "elliptic-generators"]);
    assert_eq!(stated.code, 1);
    let exact = ecl(&["verify-ddca", "--suite", "elliptic-generators", "--reading", "exact"]);
    assert_eq!(exact.code, 0, "{}", exact.stdout);
    let v = json(&stated);
    let probes = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "probe")
        .count();
    assert!(probes > 0);
}

#[test]
fn text_and_csv_formats() {
    let o = ecl(&["--emit", "text", "constant-c", "--type", "B", "--rank", "3"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("FAIL"));
    assert!(o.stdout.contains("verdict"));
    let o = ecl(&["constant-c", "--type", "D", "--rank", "4", "--emit", "csv"]);
    assert_eq!(o.code, 0);
    assert!(
        o.stdout.lines().any(|l| l.starts_with("name,status,passed")),
        "{}",
        o.stdout
    );
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = scratch("roots.json");
    let p = path.to_str().unwrap();
    let o = ecl(&["roots", "--type", "B", "--rank", "3", "--out", p]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("report written"));
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body, ecl(&["roots", "--type", "B", "--rank", "3"]).stdout);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["theta-check"][..],
        &["k-coeffs"],
        &["constant-c", "--type", "G2"],
        &["flatness", "--model", "cherednik-finite-sl3"],
        &["roots", "--type", "E6"],
    ] {
        let a = ecl(args);
        let b = ecl(args);
        assert_eq!(a, b, "{args:?}");
    }
}

const PATHS: &str = r#"{
  "tau": "0.3+1.1i",
  "paths": [
    { "name": "loop", "segments": [
        { "arc": { "center": ["0"], "direction": ["1"], "radius": 0.2 } } ] },
    { "name": "side", "segments": [
        { "line": { "from": ["0.23+0.17i"], "to": ["1.23+0.17i"] } } ] },
    { "name": "there", "segments": [
        { "line": { "from": ["0.23+0.17i"], "to": ["0.5+0.4i"] } } ] },
    { "name": "back", "segments": [
        { "line": { "from": ["0.5+0.4i"], "to": ["0.23+0.17i"] } } ] }
  ],
  "checks": [
    { "kind": "expect", "path": "side", "matrix": [["-1"]], "tol": 1e-8 },
    { "kind": "expect", "path": "loop", "matrix": [["1"]], "tol": 1e-8 },
    { "kind": "inverse", "a": "there", "b": "back", "tol": 1e-9 }
  ]
}"#;

#[test]
fn monodromy_path_file() {
    let path = scratch("paths.json");
    std::fs::write(&path, PATHS).unwrap();
    let p = path.to_str().unwrap();
    let o = ecl(&["monodromy", "--model", "scalar", "--c", "1", "--path", p]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let v = json(&o);
    let paths = v["data"]["paths"].as_array().unwrap();
    assert_eq!(paths.len(), 4);
    assert_eq!(paths[0]["path_hash"].as_str().unwrap().len(), 64);
    // With c = 1/3 the loop picks up e^{2πi/3} and the identity check fails.
    let o = ecl(&["monodromy", "--model", "scalar", "--c", "1/3", "--path", p]);
    assert_eq!(o.code, 1);
}

#[test]
fn malformed_path_files_are_usage_errors() {
    let cases = [
        ("unknown-field.json", PATHS.replace("\"radius\"", "\"radios\"")),
        (
            "unknown-path.json",
            PATHS.replace("\"path\": \"side\"", "\"path\": \"nowhere\""),
        ),
        ("bad-tau.json", PATHS.replace("0.3+1.1i", "0.3-1.1i")),
        (
            "through-zero.json",
            PATHS.replace("0.23+0.17i\"], \"to\": [\"1.23+0.17i", "-0.5\"], \"to\": [\"0.5"),
        ),
        ("not-json.json", "{".to_string()),
    ];
    for (name, body) in cases {
        let path = scratch(name);
        std::fs::write(&path, body).unwrap();
        let o = ecl(&["monodromy", "--model", "scalar", "--path", path.to_str().unwrap()]);
        assert_eq!(o.code, 2, "{name}: {}", o.stderr);
    }
    let o = ecl(&["monodromy", "--model", "scalar", "--path", "/nonexistent/paths.json"]);
    assert_eq!(o.code, 2);
}

#[test]
fn binary_exit_codes_and_thread_setting() {
    let bin = env!("CARGO_BIN_EXE_ecl");
    let st = Command::new(bin)
        .args(["roots", "--type", "A", "--rank", "2"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8(st.stdout).unwrap().contains("ecl-report/1"));
    let st = Command::new(bin)
        .args(["theta-check", "--tau", "1-1i"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin)
        .args(["constant-c", "--type", "C", "--rank", "3"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = Command::new(bin)
        .env("ECL_THREADS", "zero")
        .args(["roots", "--type", "A", "--rank", "2"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let a = Command::new(bin)
        .env("ECL_THREADS", "1")
        .args(["k-coeffs"])
        .output()
        .unwrap();
    let b = Command::new(bin)
        .env("ECL_THREADS", "4")
        .args(["k-coeffs"])
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
