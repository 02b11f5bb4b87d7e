use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilpotent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn derivation_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn exp_prints_in_powers_of_the_parameter() {
    let o = run(&[
        "exp",
        "--ring",
        "x,s,t,u,v",
        "--derivation",
        "builtin:D",
        "--poly",
        "u",
        "--param",
        "r",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "u + r*t + 1/2*r^2*s + 1/6*r^3*x^3");
}

#[test]
fn paper_verify_passes() {
    let o = run(&["paper", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().count() > 25);
    assert!(out.lines().all(|l| l.ends_with(" ... ok")));
    assert_eq!(out, stdout(&run(&["paper", "verify"])));
}

#[test]
fn paper_random_is_deterministic() {
    let a = run(&["paper", "random", "--seed", "5", "--samples", "60"]);
    let b = run(&["--sequential", "paper", "random", "--seed", "5", "--samples", "60"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("random.fiber_pairs ... ok"));
    let zero = run(&["paper", "random", "--samples", "0"]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(stderr(&zero).contains("--samples"));
}

#[test]
fn kernel_compute_on_d_keeps_growing() {
    let o = run(&[
        "kernel-compute",
        "--derivation",
        "builtin:D",
        "--loc",
        "x",
        "--rounds",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("NonStabilized after 3 rounds"));
    assert!(out.contains("adjoined 2*x^2*t + x*v^2 - 2*s*v"));
    let j = run(&[
        "--json",
        "kernel-compute",
        "--derivation",
        "builtin:D",
        "--loc",
        "x",
        "--rounds",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["result"], "NonStabilized");
    assert_eq!(v["counts"], serde_json::json!([4, 7, 12]));
}

#[test]
fn kernel_compute_on_delta_prime_stabilizes() {
    let o = run(&[
        "kernel-compute",
        "--derivation",
        "builtin:DeltaPrime",
        "--loc",
        "x",
        "--slice",
        "v/x^2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Stabilized in round"), "{}", stdout(&o));
}

#[test]
fn kernel_check_reports_confirmation() {
    let o = run(&[
        "kernel-check",
        "--derivation",
        "builtin:Delta",
        "--loc",
        "s",
        "--slice",
        "t/s",
        "--cand",
        "s",
        "--cand",
        "2*u*s - t^2",
        "--cand",
        "v",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("status: Confirmed"));
    let bad = run(&["kernel-check", "--derivation", "builtin:D", "--loc", "x", "--cand", "t"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("not invariant"));
}

#[test]
fn algebra_queries() {
    let o = run(&["eval", "--ring", "x,y", "--poly", "x^2 - 1/2*y", "--point", "3,-4"]);
    assert_eq!(stdout(&o).trim(), "11");
    let o = run(&["derive", "--derivation", "builtin:D", "--poly", "u", "--times", "3"]);
    assert_eq!(stdout(&o).trim(), "x^3");
    let o = run(&["invariant", "--derivation", "builtin:D", "--poly", "x*v - s"]);
    assert_eq!(stdout(&o).trim(), "invariant");
    let o = run(&["invariant", "--derivation", "builtin:D", "--poly", "s"]);
    assert_eq!(stdout(&o).trim(), "not invariant: d(f) = x^3");
    let o = run(&["act", "--derivation", "builtin:D", "--point", "1,0,0,0,0", "--by", "-1"]);
    assert_eq!(stdout(&o).trim(), "(1, -1, 1/2, -1/6, -1)");
    let o = run(&[
        "groebner", "--ring", "x,y,z", "--order", "lex", "--gen", "y - x^2", "--gen", "z - x^3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "y^3 - z^2"), "{}", stdout(&o));
    let o = run(&[
        "relations",
        "--ring",
        "x,v,t,u",
        "--image",
        "0",
        "--image",
        "-v^2",
        "--image",
        "v^3",
    ]);
    assert_eq!(stdout(&o), "X1\nX2^3 + X3^2\n");
    let o = run(&[
        "member", "--ring", "x,y", "--poly", "x*y^2", "--gen", "x", "--gen", "y^2 + 1",
    ]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&[
        "member",
        "--kind",
        "subalgebra",
        "--ring",
        "x,y",
        "--poly",
        "x^2*y^2",
        "--gen",
        "x*y",
    ]);
    assert_eq!(stdout(&o).trim(), "X1^2");
    let o = run(&[
        "--json",
        "member",
        "--kind",
        "subalgebra",
        "--ring",
        "x,y",
        "--poly",
        "x",
        "--gen",
        "x*y",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"member": false, "representation": null}));
}

#[test]
fn derivation_files() {
    let f = derivation_file(r#"{"ring": {"vars": ["x", "s"]}, "derivation": {"s": "x^3"}}"#);
    let path = f.path().to_str().unwrap();
    let o = run(&["derive", "--derivation", path, "--poly", "s^2 + x"]);
    assert_eq!(stdout(&o).trim(), "2*x^3*s");
    let bad = derivation_file(r#"{"ring": {"vars": ["x", "s"]}, "derivation": {"s": "w"}}"#);
    let o = run(&["derive", "--derivation", bad.path().to_str().unwrap(), "--poly", "s"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown variable `w`"), "{}", stderr(&o));
    let o = run(&["derive", "--derivation", "builtin:E", "--poly", "s"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = run(&["eval", "--ring", "x,y", "--poly", "x^2 + #y", "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--poly: at position 6"), "{}", stderr(&o));
    let o = run(&["exp", "--ring", "x,y", "--derivation", "builtin:D", "--poly", "u"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["groebner", "--ring", "x", "--gen", "x", "--order", "revlex"])
            .status
            .code(),
        Some(2)
    );
}
