use std::path::PathBuf;
use std::process::{Command, Output};

use frobsig_core::covers::{ramification, verify_fsig_rule, SectionT};
use frobsig_core::divisor::DivisorQ;
use frobsig_core::frobenius::{fsignature_estimate, CartierSpec};
use frobsig_core::{fixtures, Q};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.display().to_string()
}

fn frobsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobsig")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn fermat_cubic_p3_is_not_f_pure() {
    let o = frobsig(&["fedder", &fixture("fermat-cubic-p3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "not F-pure"), "{}", stdout(&o));
}

#[test]
fn kummer_tau_equality() {
    let o = frobsig(&["verify-tau", &fixture("kummer-p5.json"), "--t", "5/4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("T(τ_S) = (x), τ_R = (x)"), "{out}");
    assert!(out.lines().any(|l| l == "equality"));
}

#[test]
fn bundled_veronese_runs_the_signature_rule() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = frobsig(&["run", &fixture("veronese-2-2.json"), "--e-max", "2", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "verify-fsig");
    assert_eq!(v["settings"]["e_max"], 2);
    assert_eq!(v["settings"]["e_window"], 2);
    assert_eq!(v["settings"]["char"], 5);
    // round trip against the library
    let c = fixtures::veronese_2_2(5).unwrap();
    let delta = DivisorQ::single(c.base().parse_poly("a*b").unwrap(), Q::new(1, 2));
    let lib = verify_fsig_rule(&c, &SectionT::dual(&c, 0), &delta, 2).unwrap();
    assert_eq!(v["result"], serde_json::to_value(&lib).unwrap());
    assert_eq!(v["result"]["ok"], true);
}

#[test]
fn json_round_trip_for_fsig_and_ramification() {
    let dir = tempfile::tempdir().unwrap();
    let o = frobsig(&["fsig", &fixture("pair-f3.json"), "--e-max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = fixtures::regular(3, &["a1", "a2"]).unwrap();
    let spec = CartierSpec::pair(DivisorQ::single(a.parse_poly("a1*a2").unwrap(), Q::new(1, 2)));
    let lib = fsignature_estimate(&a, &spec, 2).unwrap();
    assert_eq!(v["result"], serde_json::to_value(&lib).unwrap());

    let out = dir.path().join("ram.json");
    let o = frobsig(&["cover-ram", &fixture("f2-cover.json"), "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let c = fixtures::f2_cover().unwrap();
    let lib = ramification(&c, &SectionT::trace(&c)).unwrap().report();
    assert_eq!(v["result"], serde_json::to_value(&lib).unwrap());
}

#[test]
fn csv_for_per_e_tables_only() {
    let o = frobsig(&["ae", &fixture("pair-f3.json"), "--e-max", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "e,q,a_e\n1,3,4\n2,9,25\n");
    let o = frobsig(&["fedder", &fixture("fermat-cubic-p3.json"), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minimal_config_is_accepted() {
    let o = frobsig(&["run", &fixture("minimal.json"), "--e-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("# e_max = 2, e_window = 2"));
}

#[test]
fn config_errors_exit_two_with_field_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let mismatch = write_config(
        &dir,
        "mismatch.json",
        r#"{"char":5,"ring":{"vars":["x"]},"cover":{"char":3,"base":{"vars":["x"]},"total":{"vars":["y"]},"images":["y^2"],"basis":["1","y"]}}"#,
    );
    let o = frobsig(&["cover-ram", &mismatch]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`cover.char`"), "{}", stderr(&o));

    let bad = write_config(&dir, "bad.json", r#"{"char":3,"ring":{"vars":["x","y"],"relations":["x*y","x+*y"]}}"#);
    let o = frobsig(&["ae", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`ring.relations[1]`"), "{}", stderr(&o));

    let o = frobsig(&["fsig", "/nonexistent/config.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = frobsig(&["no-such-command", &fixture("minimal.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_rule_exits_one() {
    let o = frobsig(&["run", &fixture("veronese-b-p5.json"), "--e-max", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("T(n) ⊄ m, witness xy"));
}

#[test]
fn cover_norm_and_minpoly() {
    let f = fixture("f2-cover.json");
    let o = frobsig(&["cover-norm", &f, "--element", "x^2+y*z"]);
    assert!(stdout(&o).contains("Norm(x^2 + y*z) = y^6 + u^2*v^2"));
    let o = frobsig(&["cover-minpoly", &f, "--element", "x^2+y*z"]);
    assert!(stdout(&o).contains("X^3 + (y*z)*X^2 + (y^6 + u^2*v^2)"));
}

#[test]
fn transpose_scan_agrees_with_divisor_check() {
    let o = frobsig(&["transpose", &fixture("f2-cover.json"), "--e", "1", "--element", "y^3+u*v", "--element", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solver and divisor check agree"));
    let o = frobsig(&["transpose", &fixture("f2-cover.json"), "--e", "1", "--element", "y^3+u*v", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"][0]["transposable"], true);
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_frobsig"))
        .args(["ae", &fixture("minimal.json"), "--e-max", "1"])
        .env("FROBSIG_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_frobsig"))
        .args(["ae", &fixture("minimal.json"), "--e-max", "1", "--format", "json"])
        .env("FROBSIG_THREADS", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["settings"]["threads"], 2);
}

#[test]
fn paper_suite_passes() {
    let o = frobsig(&["paper-suite", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
