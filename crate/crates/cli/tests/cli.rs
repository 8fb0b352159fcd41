//! End-to-end runs of the command-line tool.

use std::io::Write;
use std::process::Command;

use fpfilter_cli::run;
use serde_json::Value;

fn program(src: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(src.as_bytes()).unwrap();
    f
}

fn run_on(src: &str, extra: &[&str]) -> (i32, String, String) {
    let f = program(src);
    let mut args = vec!["fpfilter", "--input", f.path().to_str().unwrap()];
    args.extend_from_slice(extra);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_of(src: &str) -> Value {
    let (code, out, err) = run_on(src, &[]);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

const ADDITION: &str = "var x, y, z;\nx in [0, 13];\ny in [-inf, inf];\nz in [0, 7];\nx = y + z;\n";

#[test]
fn addition_example_under_nearest() {
    let r = json_of(ADDITION);
    assert_eq!(r["variables"]["x"]["interval"], serde_json::json!(["0x0", "0x1.ap3"]));
    assert_eq!(r["variables"]["x"]["may_be_nan"], false);
    assert_eq!(r["consistent"], true);
}

#[test]
fn addition_with_signed_zero_operands_under_down() {
    let r = json_of("rounding {down};\nvar x, y, z;\ny in [+0, 5];\nz in [-0, 8];\nx = y + z;\n");
    assert_eq!(r["variables"]["x"]["interval"], serde_json::json!(["-0x0", "0x1.ap3"]));
}

#[test]
fn declared_domains_are_echoed_without_constraints() {
    let r = json_of("format mini(4,3);\nvar a, b, c;\na in [-1, 2.5];\nb in [0x1p-2, 0x1p2];\n");
    assert_eq!(r["variables"]["a"]["interval"], serde_json::json!(["-0x1p0", "0x1.4p1"]));
    assert_eq!(r["variables"]["b"]["interval"], serde_json::json!(["0x1p-2", "0x1p2"]));
    assert_eq!(r["variables"]["c"]["interval"], serde_json::json!(["-inf", "+inf"]));
    assert_eq!(r["variables"]["c"]["may_be_nan"], true);
    assert_eq!(r["findings"], serde_json::json!([]));
}

#[test]
fn overflow_probe_finds_a_witness() {
    let r = json_of("format mini(3,2);\nvar x, y, z;\ny in [0x1.cp2, 0x1.cp2];\nz in [0x1.cp2, 0x1.cp2];\nx = y + z;\ncheck overflow;\n");
    let f = &r["findings"][0];
    assert_eq!(f["kind"], "finite_to_infinite");
    assert_eq!(f["constraint"], "x = y + z");
    assert_eq!(f["status"], "witness_found");
    assert_eq!(f["witness"]["x"], "+inf");
    assert_eq!(f["witness"]["y"], "0x1.cp2");
}

#[test]
fn witnesses_satisfy_the_constraint() {
    let r = json_of("format mini(3,2);\nrounding {n, down, up, zero};\nvar x, y, z;\nx = y / z;\ncheck nan, overflow, underflow, absorption;\n");
    let fmt = fpfilter::softfloat::FloatFormat::mini(3, 2);
    for f in r["findings"].as_array().unwrap() {
        let Some(w) = f.get("witness") else { continue };
        let get = |k: &str| {
            let s = w[k].as_str().unwrap();
            if s == "nan" {
                fmt.qnan()
            } else {
                fpfilter::softfloat::hex::parse_float(fmt, s, fpfilter::softfloat::RoundingMode::Nearest).unwrap().0
            }
        };
        let mode = match w["rounding"].as_str().unwrap() {
            "n" => fpfilter::softfloat::RoundingMode::Nearest,
            "down" => fpfilter::softfloat::RoundingMode::Down,
            "up" => fpfilter::softfloat::RoundingMode::Up,
            _ => fpfilter::softfloat::RoundingMode::TowardZero,
        };
        let got = fpfilter::softfloat::fp_op(&get("y"), fpfilter::softfloat::Op::Div, &get("z"), mode);
        let x = get("x");
        assert!(got == x || (got.is_nan() && x.is_nan()), "{f}");
    }
}

#[test]
fn underflow_expands_to_three_checks() {
    let r = json_of("format mini(3,2);\nvar x, y, z;\nx = y * z;\ncheck underflow;\n");
    let kinds: Vec<&str> = r["findings"].as_array().unwrap().iter().map(|f| f["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["gradual_underflow", "hard_underflow", "soft_underflow"]);
}

#[test]
fn inconsistent_system_still_exits_zero() {
    let (code, out, _) = run_on("format mini(3,2);\nvar x, y, z;\ny in [1, 2];\nz in [1, 2];\nx in [5, 7];\nx = y + z;\n", &[]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["consistent"], false);
    assert_eq!(r["variables"]["x"]["interval"], "empty");
}

#[test]
fn text_output() {
    let (code, out, _) = run_on(ADDITION, &["--output", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("x in [0x0, 0x1.ap3]"), "{out}");
}

#[test]
fn iteration_limit_is_reported() {
    let (_, out, _) = run_on(ADDITION, &["--max-iterations", "1"]);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["stats"]["truncated"], true);
    assert_eq!(r["stats"]["iterations"], 1);
}

#[test]
fn composed_mode_is_accepted() {
    let (code, out, _) = run_on("var x, y, z;\nx in [6, inf];\ny in [+0, 42];\nx = y / z;\n", &["--eval-mode", "composed"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["variables"]["z"]["interval"], serde_json::json!(["0x0", "0x1.c00002p2"]));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let (code, out, err) = run_on("var a;\na in [5, 1];\n", &[]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains(":2:6:"), "{err}");
    let (code, _, err) = run_on("var a;\nb = a + a;\n", &[]);
    assert_eq!(code, 2);
    assert!(err.contains(":2:1:") && err.contains("unknown variable"), "{err}");
}

#[test]
fn usage_and_io_errors() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["fpfilter", "--input", "x", "--output", "xml"], &mut out, &mut err), 1);
    assert_eq!(run(["fpfilter"], &mut out, &mut err), 1);
    assert_eq!(run(["fpfilter", "--input", "/nonexistent/prog.fp"], &mut out, &mut err), 2);
    out.clear();
    assert_eq!(run(["fpfilter", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("--search-budget"));
}

#[test]
fn binary_exit_codes() {
    let f = program(ADDITION);
    let bin = env!("CARGO_BIN_EXE_fpfilter");
    let ok = Command::new(bin).args(["--input", f.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(r["format"], "binary32");
    let bad = Command::new(bin).arg("--frobnicate").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
