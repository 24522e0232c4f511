use std::io::Write;
use std::process::Command;

use elimcalc_cli::{run, Output, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn sh(args: &[&str]) -> Output {
    run(std::iter::once("elimcalc").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (u8, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = sh(&full);
    let v: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out));
    (out.code, v)
}

fn assert_schema(v: &Value) {
    let m = v.as_object().expect("top-level object");
    for key in ["inputs", "g", "resultant", "h1", "h2", "t1", "t2", "multiplicity_table", "checks", "counterexamples"] {
        assert!(m.contains_key(key), "missing {key} in {v}");
    }
    assert!(m["inputs"].as_array().unwrap().iter().all(Value::is_string));
    for key in ["g", "resultant", "h1", "h2", "t1", "t2"] {
        assert!(m[key].is_string() || m[key].is_null(), "{key}");
    }
    for row in m["multiplicity_table"].as_array().unwrap() {
        assert!(row["factor"].is_string());
        assert!(row["mu"].is_u64());
        assert!(row["nu"].is_u64());
    }
    for (_, verdict) in m["checks"].as_object().unwrap() {
        assert!(matches!(verdict.as_str(), Some("pass" | "fail" | "n/a")), "{verdict}");
    }
    for c in m["counterexamples"].as_array().unwrap() {
        for key in ["f1", "f2", "x", "y"] {
            assert!(c[key].is_string());
        }
        assert!(c["mu"].is_u64() && c["nu"].is_u64());
    }
}

const F1: &str = "-(y+1)*(x-y-1)";
const F2: &str = "x^2+y^2-1";

#[test]
fn analyze_line_circle() {
    let (code, v) = json(&["analyze", "-f", F1, "-g", F2]);
    assert_eq!(code, EXIT_OK);
    assert_schema(&v);
    assert_eq!(v["g"], "y^3 + 2*y^2 + y");
    assert_eq!(v["resultant"], "2*y^4 + 6*y^3 + 6*y^2 + 2*y");
    let rows = v["multiplicity_table"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["factor"] == "y + 1" && r["mu"] == 2 && r["nu"] == 3));

    let text = sh(&["analyze", "-f", F1, "-g", F2]);
    assert_eq!(text.code, EXIT_OK);
    assert!(text.stdout.contains("g = y^3 + 2*y^2 + y\n"));
    assert!(text.stdout.contains("  y + 1: 2 3\n"));
}

#[test]
fn resultant_of_two_lines() {
    let out = sh(&["resultant", "--var", "x", "-f", "x-y", "-g", "x+y"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "2*y\n"));
    for method in ["laplace", "interpolation"] {
        let out = sh(&["resultant", "--method", method, "-f", "x-y", "-g", "x+y"]);
        assert_eq!(out.stdout, "2*y\n");
    }
    let out = sh(&["resultant", "--var", "y", "-f", "x-y", "-g", "x+y"]);
    assert_eq!(out.stdout, "-2*x\n");
}

#[test]
fn usage_and_parse_errors() {
    let out = sh(&["resultant", "-f", "x^", "-g", "x"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("offset 2"), "{}", out.stderr);

    let out = sh(&["resultant", "-f", "x+z", "-g", "x"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("unknown variable"));

    assert_eq!(sh(&["resultant", "-f", "x"]).code, EXIT_USAGE);
    assert_eq!(sh(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(sh(&[]).code, EXIT_USAGE);
    assert_eq!(sh(&["selftest", "--suite", "bogus"]).code, EXIT_USAGE);
    assert_eq!(sh(&["--vars", "x,y,z", "analyze", "-f", "x", "-g", "y"]).code, EXIT_USAGE);
    assert_eq!(sh(&["--help"]).code, EXIT_OK);
}

#[test]
fn groebner_and_eliminate() {
    let args = ["-p", "x^3+3*x^2*y+3*x*y^2+4*x*y+y^3", "-p", "x-y"];
    let out = sh(&[&["groebner"][..], &args].concat());
    assert_eq!(out.stdout, "y^3 + 1/2*y^2\nx - y\n");
    let out = sh(&[&["groebner", "--strategy", "fifo", "--no-chain"][..], &args].concat());
    assert_eq!(out.stdout, "y^3 + 1/2*y^2\nx - y\n");
    let out = sh(&[&["eliminate"][..], &args].concat());
    assert_eq!(out.stdout, "y^3 + 1/2*y^2\n");
    let (_, v) = json(&[&["eliminate"][..], &args].concat());
    assert_schema(&v);
    assert_eq!(v["g"], "y^3 + 1/2*y^2");

    let out = sh(&["eliminate", "-p", "x*y", "-p", "x"]);
    assert_eq!(out.stdout, "0\n");

    let out = sh(&["--vars", "x,y,z", "eliminate", "--count", "2", "-p", "x-y", "-p", "y-z", "-p", "z^2-2"]);
    assert_eq!(out.stdout, "z^2 - 2\n");
}

#[test]
fn input_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# Example").unwrap();
    writeln!(file, "(x-y)*(x-3)").unwrap();
    writeln!(file).unwrap();
    writeln!(file, "(y-1)*(x-2)").unwrap();
    let path = file.path().to_str().unwrap();
    let (code, v) = json(&["analyze", "--input", path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["g"], "y^2 - 3*y + 2");
    assert_eq!(v["h2"], "y - 1");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "x-y").unwrap();
    writeln!(bad, "x+*y").unwrap();
    let out = sh(&["groebner", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains(":2:"), "{}", out.stderr);
}

#[test]
fn conjecture_point_verdicts() {
    let (code, v) = json(&["conjecture", "-f", F1, "-g", F2]);
    assert_eq!(code, EXIT_OK);
    assert_schema(&v);
    let points = v["points"].as_array().unwrap();
    let p = points.iter().find(|p| p["x"] == "0" && p["y"] == "-1").expect("point (0, -1)");
    assert_eq!(p["common_horizontal_tangent"], true);
    assert_eq!((p["mu"].as_u64(), p["nu"].as_u64()), (Some(2), Some(3)));
    assert_eq!(p["consistent"], true);

    let (code, v) = json(&["conjecture", "-f", "x*y", "-g", "x*y+x"]);
    assert_eq!(code, EXIT_OK);
    assert_schema(&v);

    let (code, v) = json(&["conjecture", "--corpus", "--count", "4", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_schema(&v);
    assert_eq!(v["summary"]["instances"], 8);
}

#[test]
fn expand_and_corrupted_generator() {
    let base = ["-p", "x^3+3*x^2*y+3*x*y^2+4*x*y+y^3", "-p", "x-y"];
    let (code, v) = json(&[&["expand"][..], &base].concat());
    assert_eq!(code, EXIT_OK);
    assert_schema(&v);
    assert_eq!(v["basis"], serde_json::json!(["y^3 + 1/2*y^2", "x - y"]));
    assert_eq!(v["checks"]["expansion_matches_direct"], "pass");

    let out = sh(&[&["expand", "-e", "y^3+1/2*y^2"][..], &base].concat());
    assert_eq!(out.code, EXIT_OK);

    let out = sh(&[&["expand", "-e", "y-5"][..], &base].concat());
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    assert!(out.stdout.contains("verification: fail"));
}

#[test]
fn selftest_divisibility_spec_run() {
    let out = sh(&["selftest", "--suite", "divisibility", "--count", "500", "--seed", "42"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("cases=500 passed=500 failed=0"));
}

#[test]
fn selftest_transcripts_repeat() {
    let args = ["selftest", "--count", "6", "--seed", "99"];
    let a = sh(&args);
    let b = sh(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let (code, v) = json(&args);
    assert_eq!(code, EXIT_OK);
    assert_schema(&v);
    assert_eq!(v["suites"].as_array().unwrap().len(), 10);
}

#[test]
fn json_schema_for_every_command() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["resultant", "-f", "x-y", "-g", "x+y"],
        vec!["groebner", "-p", "x^2-y", "-p", "x*y-1"],
        vec!["eliminate", "-p", "x^2-y", "-p", "x*y-1"],
        vec!["analyze", "-f", "x*y-1", "-g", "x*y-y"],
        vec!["conjecture", "-f", F1, "-g", F2],
        vec!["expand", "-p", "x^2-y", "-p", "x*y-1"],
        vec!["selftest", "--suite", "oracle", "--count", "3"],
    ];
    for c in commands {
        let (code, v) = json(&c);
        assert_eq!(code, EXIT_OK, "{c:?}");
        assert_schema(&v);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_elimcalc");
    let ok = Command::new(bin).args(["resultant", "-f", "x-y", "-g", "x+y"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2*y\n");
    let bad = Command::new(bin).args(["resultant", "-f", "x^", "-g", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let seeded = Command::new(bin)
        .args(["selftest", "--suite", "oracle", "--count", "3"])
        .env("ELIMCALC_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(seeded.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&seeded.stdout).contains("seed=17"));
}
