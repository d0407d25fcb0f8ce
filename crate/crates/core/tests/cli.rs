use std::io::Write;
use std::process::{Command, Output, Stdio};

fn holo(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_holo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("holo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const CATALAN: &str = "1\n1\n2\n5\n14\n42\n";
const CATALAN_REC: &str = "(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1\n";

#[test]
fn catalan_guess_json() {
    let o = holo(&["guess-rec", "--json", "-"], CATALAN);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relation"]["kind"], "rec");
    assert_eq!(v["relation"]["coefficients"], serde_json::json!([["-2", "-4"], ["2", "1"]]));
    assert_eq!(v["order"], 1);
}

#[test]
fn catalan_guess_pretty() {
    let o = holo(&["guess-rec", "-"], CATALAN);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), CATALAN_REC.trim());
}

#[test]
fn random_terms_exit_two_with_trace() {
    let o = holo(&["--json", "guess-rec", "-"], "3\n1\n4\n1\n5\n9\n");
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["relation"].is_null());
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(holo(&["guess-rec", "-"], "1 1\n3 2\n").status.code(), Some(3));
    assert_eq!(holo(&["guess-rec", "-"], "1\nabc\n").status.code(), Some(3));
    assert_eq!(holo(&["guess-rec", "/nonexistent/file"], "").status.code(), Some(4));
    assert_eq!(holo(&["--margin", "0", "guess-rec", "-"], CATALAN).status.code(), Some(4));
    assert_eq!(holo(&["frobnicate"], "").status.code(), Some(4));
    assert_eq!(holo(&["eval", "nth", "-", "-n", "5"], "(x)*y'(x) + (-1)*y(x) = 0; [x^0] y(x) = 1\n").status.code(), Some(4));
    assert_eq!(holo(&["--help"], "").status.code(), Some(0));
}

#[test]
fn seed_terms_limits_input() {
    let long = "1\n1\n2\n5\n14\n42\n132\n429\n1430\n4862\n";
    let o = holo(&["--json", "--seed-terms", "6", "guess-rec", "-"], long);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"], 6);
    assert_eq!(holo(&["--seed-terms", "1", "guess-rec", "-"], long).status.code(), Some(4));
}

#[test]
fn json_is_deterministic() {
    let terms = "1\n1\n2\n5\n14\n42\n132\n429\n1430\n4862\n16796\n58786\n208012\n742900\n";
    let a = holo(&["--json", "guess-ode", "-"], terms);
    let b = holo(&["--json", "guess-ode", "-"], terms);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn motzkin_algebraic_guess() {
    let o = holo(&["guess-alg", "--path", "rational", "-"], "1\n1\n2\n4\n9\n21\n51\n127\n323\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), "(x^2)*y^2 + (x - 1)*y + (1) = 0; y(0) = 1");
}

#[test]
fn convert_and_eval() {
    let rec = write_tmp("cat.rec", CATALAN_REC);
    let o = holo(&["--json", "convert", "rec2ode", &rec], "");
    assert_eq!(o.status.code(), Some(0));
    let ode = write_tmp("cat.json", &stdout(&o));
    let o = holo(&["eval", "series", &ode, "-n", "7"], "");
    assert_eq!(stdout(&o), "1\n1\n2\n5\n14\n42\n132\n");
    let o = holo(&["convert", "ode2rec", &ode], "");
    assert_eq!(stdout(&o).trim(), CATALAN_REC.trim());
    let o = holo(&["eval", "nth", &rec, "-n", "100"], "");
    assert_eq!(stdout(&o).trim(), "896519947090131496687170070074100632420837521538745909320");
    let o = holo(&["eval", "unroll", "-", "-n", "4"], CATALAN_REC);
    assert_eq!(stdout(&o), "1\n1\n2\n5\n");
}

#[test]
fn algebraic_to_ode() {
    let o = holo(&["convert", "alg2ode", "-"], "(x)*y^2 + (-1)*y + (1) = 0; y(0) = 1\n");
    assert_eq!(o.status.code(), Some(0));
    let ode = stdout(&o);
    let o = holo(&["eval", "series", "-", "-n", "6"], &ode);
    assert_eq!(stdout(&o), "1\n1\n2\n5\n14\n42\n");
}

#[test]
fn closures_from_files() {
    let fact = write_tmp("fact.rec", "u(n+1) + (-n - 1)*u(n) = 0; u(0) = 1\n");
    let harm = write_tmp("harm.rec", "(n + 2)*u(n+1) + (-n - 1)*u(n) = 0; u(0) = 1\n");
    let o = holo(&["closure", "add", &fact, &harm], "");
    assert_eq!(o.status.code(), Some(0));
    let sum = write_tmp("sum.rec", &stdout(&o));
    let o = holo(&["eval", "unroll", &sum, "-n", "4"], "");
    assert_eq!(stdout(&o), "2\n3/2\n7/3\n25/4\n");

    let o = holo(&["closure", "scale", &fact, "--ratio", "-1/2"], "");
    let scaled = write_tmp("scaled.rec", &stdout(&o));
    let o = holo(&["eval", "unroll", &scaled, "-n", "4"], "");
    assert_eq!(stdout(&o), "1\n-1/2\n1/2\n-3/4\n");

    let ode = write_tmp("exp.ode", "y'(x) + (-1)*y(x) = 0; [x^0] y(x) = 1\n");
    assert_eq!(holo(&["closure", "mul", &fact, &ode], "").status.code(), Some(4));
}

#[test]
fn ore_commands() {
    let a = write_tmp("a.op", "kind=shift var=n; [[-2, -4]; [2, 1]]\n");
    let b = write_tmp("b.op", "kind=shift var=n; [[-1]; [1]]\n");
    let o = holo(&["--json", "ore", "lclm", &a, &b], "");
    assert_eq!(o.status.code(), Some(0));
    let l = write_tmp("l.op", &format!("{}\n", stdout(&o).trim()));
    let o = holo(&["ore", "gcrd", &l, &a], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "(n + 2)*S + (-4*n - 2)");
    let o = holo(&["--json", "ore", "divmod", &a, &a], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient"]["coefficients"], serde_json::json!([{"num": ["1"], "den": ["1"]}]));
    assert_eq!(v["remainder"]["coefficients"], serde_json::json!([]));
}

#[test]
fn iso_case_json() {
    let o = holo(&["--json", "case", "iso", "--a", "5/2"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn yang_zagier_case_json() {
    let o = holo(&["case", "yang-zagier", "--json"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
}
