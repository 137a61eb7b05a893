//! End-to-end checks of the binary: golden output bytes, determinism of
//! repeated invocations, and the exit-code contract (0 ok, 1 domain error,
//! 2 usage error).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miniversal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn golden_tjurina_json() {
    assert_eq!(
        stdout_of(&["tjurina", "--vars", "x,y", "x*y", "--json"]),
        "{\"tjurina\":1,\"basis\":[\"1\"]}\n"
    );
}

#[test]
fn golden_tjurina_text() {
    assert_eq!(
        stdout_of(&["tjurina", "--vars", "x,y", "y^2 - x^3"]),
        "tjurina: 2\nbasis: 1, x\n"
    );
}

#[test]
fn golden_delta_both_json() {
    assert_eq!(
        stdout_of(&["delta", "--n", "3", "--d", "4", "--method", "both", "--json"]),
        "{\"closed_form\":false,\"linear_algebra\":false}\n"
    );
}

#[test]
fn golden_curve_moduli_text() {
    assert_eq!(stdout_of(&["curve-moduli", "--genus", "5"]), "12\n");
}

#[test]
fn repeated_invocations_are_byte_identical() {
    let args: Vec<Vec<&str>> = vec![
        vec!["cohomology", "--n", "2", "--d", "-5", "--q", "2", "--method", "both", "--json"],
        vec!["fprod", "--vars", "t", "--left", "t^3", "--right", "t^2", "--base", "t", "--json"],
        vec!["miniversal", "--vars", "x,y", "y^2 - x^3", "--json"],
        vec!["algebra", "--vars", "x,y", "x^2", "x*y", "y^3"],
    ];
    for a in &args {
        assert_eq!(stdout_of(a), stdout_of(a), "args: {a:?}");
    }
    assert_eq!(
        stdout_of(&args[0]),
        "{\"formula\":6,\"cech\":6,\"euler_characteristic\":6}\n"
    );
}

#[test]
fn specialize_assigns_parameters() {
    let out = stdout_of(&[
        "specialize", "--vars", "x,y", "y^2 - x^3", "--base-vars", "t", "--base", "t^3",
        "--assign", "t1=t,t2=2*t", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["base"]["dimension"], 3);
    assert_eq!(v["coefficients"]["1"], "-x^3 + y^2");
    assert_eq!(v["coefficients"]["t"], "2*x + 1");
    assert_eq!(v["coefficients"]["t^2"], "0");
}

#[test]
fn lift_extends_the_base() {
    let out = stdout_of(&[
        "lift", "--vars", "x,y", "--base-vars", "t", "--base", "t^2", "--ext", "t^3",
        "x*y + 3*t", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["base"]["dimension"], 3);
    assert_eq!(v["coefficients"]["1"], "x*y");
    assert_eq!(v["coefficients"]["t"], "3");
}

#[test]
fn glue_over_shared_quotient() {
    let out = stdout_of(&[
        "glue", "--vars", "x,y", "--base-vars", "t", "--left", "t^3", "--right", "t^3",
        "--base", "t^2", "x*y + t", "x*y + t", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["base"]["dimension"], 4);
    assert_eq!(v["coefficients"]["1"], "x*y");
}

#[test]
fn factor_ext_counts_steps() {
    assert_eq!(
        stdout_of(&["factor-ext", "--vars", "t", "--source", "t^4", "--target", "t^2"]),
        "length: 2\ndimensions: 4, 3, 2\n"
    );
}

#[test]
fn prime_field_flag() {
    assert_eq!(
        stdout_of(&["tjurina", "--field", "Fp:7", "--vars", "x,y", "x*y", "--json"]),
        "{\"tjurina\":1,\"basis\":[\"1\"]}\n"
    );
}

#[test]
fn domain_errors_exit_1_with_kind() {
    let out = run(&["tjurina", "--vars", "x,y", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error[constant_equation]:"), "stderr: {err}");
    assert!(out.stdout.is_empty());

    let out = run(&["tjurina", "--vars", "x,y", "5", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("structured error on stderr");
    assert_eq!(v["error"]["kind"], "constant_equation");
}

#[test]
fn parse_errors_exit_1() {
    let out = run(&["mu", "--vars", "x,y", "x^^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[syntax]:"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["bogus-verb"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["tjurina", "x*y"]); // missing required --vars
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["tjurina", "--field", "Fp:6", "--vars", "x,y", "x*y"]); // 6 is not prime
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_twists_parse() {
    assert_eq!(
        stdout_of(&["cohomology", "--n", "3", "--d", "-4", "--q", "3"]),
        "1\n"
    );
}
