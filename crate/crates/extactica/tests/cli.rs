//! Black-box tests of the command-line binary: verbs, formats, exit codes.

use std::io::Write as _;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_extactica"))
}

fn fixture(name: &str) -> String {
    format!("{}/../../docs/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json_out(args: &[&str]) -> (i32, serde_json::Value) {
    let out = bin().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (code, v)
}

#[test]
fn extactic_verb() {
    let (code, v) = json_out(&["extactic", "--field", &fixture("X2.json"), "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["expected_degree"], 6);
    assert_eq!(v["vanished"], false);
    assert!(!v["polynomial"].as_str().unwrap().is_empty());
}

#[test]
fn first_integral_verb() {
    let (code, v) = json_out(&[
        "first-integral",
        "--field",
        &fixture("radialxy.json"),
        "--dmax",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 1);
}

#[test]
fn family_verb() {
    let (code, v) = json_out(&[
        "family",
        "--fieldX",
        &fixture("diagx.json"),
        "--fieldY",
        &fixture("diagy.json"),
        "--n",
        "1",
    ]);
    assert_eq!(code, 0);
    // s*t*(t - s) rendered canonically with a positive leading coefficient
    assert_eq!(v["gcd_form"], "s^2*t - s*t^2");
    let roots: Vec<&str> = v["rational_roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect();
    assert_eq!(roots, ["(0:1)", "(1:0)", "(1:1)"]);
}

#[test]
fn usage_errors_exit_1() {
    let out = bin().arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["lines", "--field", "/no/such/file.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().args(["extactic", "--n", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "missing --field");
}

#[test]
fn computation_errors_exit_2() {
    // E_1 vanishes identically: every line is invariant, `lines` refuses
    let (code, v) = json_out(&["lines", "--field", &fixture("radialxy.json")]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("extactic"));
}

#[test]
fn stdin_field() {
    let mut child = bin()
        .args(["extactic", "--field", "-", "--n", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read_to_string(fixture("diag21.json")).unwrap().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["polynomial"], "-2*x*y*z");
}

#[test]
fn text_format_same_values() {
    let (code, v) = json_out(&["bounds", "--field", &fixture("jouanolou2.json"), "--n", "1"]);
    assert_eq!(code, 0);
    let out = bin()
        .args([
            "bounds",
            "--field",
            &fixture("jouanolou2.json"),
            "--n",
            "1",
            "--format",
            "text",
        ])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(&format!(
        "solution_count_bound: {}",
        v["solution_count_bound"]
    )));
    assert!(text.contains(&format!(
        "jouanolou_bound.floor: {}",
        v["jouanolou_bound"]["floor"]
    )));
}

#[test]
fn deterministic_output() {
    let a = bin()
        .args(["extactic", "--field", &fixture("X3.json"), "--n", "1"])
        .output()
        .unwrap();
    let b = bin()
        .args(["extactic", "--field", &fixture("X3.json"), "--n", "1"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout, "byte-identical reports");
}

#[test]
fn documented_fixtures_are_bit_exact() {
    let cases: [(&[&str], &str); 6] = [
        (&["extactic", "--field", "X2.json", "--n", "1"], "X2.extactic_n1.json"),
        (
            &["first-integral", "--field", "radialxy.json", "--dmax", "3"],
            "radialxy.first_integral.json",
        ),
        (&["lines", "--field", "X2.json"], "X2.lines.json"),
        (
            &["lines-through", "--field", "X2.json", "--point", "0,0,1"],
            "X2.lines_through_origin.json",
        ),
        (
            &["bounds", "--field", "jouanolou2.json", "--n", "1"],
            "jouanolou2.bounds_n1.json",
        ),
        (
            &["family", "--fieldX", "diagx.json", "--fieldY", "diagy.json", "--n", "1"],
            "diag_family_n1.json",
        ),
    ];
    for (args, expected) in cases {
        let resolved: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    fixture(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let out = bin().args(&resolved).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        let mut got = out.stdout;
        if got.last() != Some(&b'\n') {
            got.push(b'\n');
        }
        let want = std::fs::read(fixture(expected)).unwrap();
        assert_eq!(got, want, "fixture drift: {expected}");
    }
}

#[test]
fn lines_through_verb() {
    let (code, v) = json_out(&[
        "lines-through",
        "--field",
        &fixture("X2.json"),
        "--point",
        "0,0,1",
    ]);
    assert_eq!(code, 0);
    let curves: Vec<&str> = v["lines"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["curve"].as_str().unwrap())
        .collect();
    assert_eq!(curves, ["x", "x - y", "y"]);
}

#[test]
fn contact_verb() {
    let (code, v) = json_out(&[
        "contact",
        "--field",
        &fixture("X2.json"),
        "--curve",
        "x - y",
        "--point",
        "1,1,1",
        "--cap",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["order"]["kind"], "flat_up_to_cap");
    assert_eq!(v["order"]["value"], 8);
}
