use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyafreq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn coeffs(out: &Output) -> Vec<String> {
    json_of(out)["coeffs"]
        .as_array()
        .expect("coeffs")
        .iter()
        .map(|v| v.as_str().expect("string").to_string())
        .collect()
}

fn temp_poly(name: &str, json: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("polyafreq-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, json).expect("write temp file");
    path
}

#[test]
fn gen_examples() {
    let out = run(&["gen", "eulerian", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"coeffs":["0","1","4","1"]}"#);
    assert_eq!(coeffs(&run(&["gen", "fz_h", "--type", "D", "--n", "2"])), ["1", "2", "1"]);
    assert_eq!(coeffs(&run(&["gen", "w2", "--n", "4"])), ["1", "10", "10", "1"]);
    assert_eq!(coeffs(&run(&["gen", "t_stack", "--n", "4", "--t", "2"])), ["1", "10", "10", "1"]);
    assert_eq!(coeffs(&run(&["gen", "b_euler", "--n", "3", "--q", "-1"])), ["1", "-3", "3", "-1"]);
    assert_eq!(coeffs(&run(&["gen", "q_eulerian", "--n", "2", "--q", "1/2"])), ["1/4", "1/2"]);
    assert_eq!(coeffs(&run(&["gen", "p_bn_subset", "--n", "2", "--set", "0,2"])), ["1", "2", "1"]);
    assert_eq!(coeffs(&run(&["gen", "narayana", "--n", "3"])), ["1", "3", "1"]);
}

#[test]
fn gen_every_family_runs() {
    let cases: &[&[&str]] = &[
        &["surjection", "--n", "3"],
        &["eulerian_t", "--n", "4", "--t", "-3/2"],
        &["e_q", "--n", "3", "--q", "-2"],
        &["b_euler_multi", "--n", "2", "--qs", "1/2,-1/3"],
        &["p_dn", "--n", "3"],
    ];
    for c in cases {
        let mut args = vec!["gen"];
        args.extend_from_slice(c);
        assert_eq!(code(&run(&args)), 0, "{c:?}");
    }
}

#[test]
fn gen_usage_errors() {
    assert_eq!(code(&run(&["gen", "nonsense", "--n", "3"])), 2);
    assert_eq!(code(&run(&["gen", "q_eulerian", "--n", "3", "--q", "1/0"])), 2);
    assert_eq!(code(&run(&["gen", "q_eulerian", "--n", "3", "--q", "abc"])), 2);
    assert_eq!(code(&run(&["gen", "eulerian"])), 2);
    assert_eq!(code(&run(&["gen", "eulerian", "--n", "-1"])), 2);
}

#[test]
fn check_examples() {
    let f = temp_poly("f", r#"{"coeffs":["0","1"]}"#);
    let g = temp_poly("g", r#"{"coeffs":["-1","0","1"]}"#);
    let out = run(&["check", "interlace", f.to_str().unwrap(), g.to_str().unwrap()]);
    assert_eq!(json_of(&out)["relation"], "interlaces_strict");
    assert_eq!(code(&out), 0);

    let out = run(&["check", "pf", "--poly", r#"{"coeffs":["1","1","1"]}"#]);
    assert_eq!(json_of(&out)["pf"], false);
    assert_eq!(code(&out), 1);

    let out = run(&["check", "multiplier-n", "--gamma-shift", "-1/1", "--n", "3"]);
    assert_eq!(json_of(&out)["multiplier_n_sequence"], false);
    assert_eq!(code(&out), 1);
}

#[test]
fn check_kinds_and_exit_codes() {
    let eul = r#"{"coeffs":["0","1","4","1"]}"#;
    assert_eq!(code(&run(&["check", "real-rooted", eul])), 0);
    assert_eq!(code(&run(&["check", "simple", eul])), 0);
    assert_eq!(code(&run(&["check", "interval", eul, "--lo", "-inf", "--hi", "0"])), 0);
    assert_eq!(code(&run(&["check", "interval", eul, "--lo", "-1/10", "--hi", "0"])), 1);
    assert_eq!(code(&run(&["check", "pf", eul])), 0);
    assert_eq!(code(&run(&["check", "log-concave", eul])), 0);
    assert_eq!(code(&run(&["check", "unimodal", eul])), 0);
    assert_eq!(code(&run(&["check", "simple", r#"{"coeffs":["1","2","1"]}"#])), 1);
    assert_eq!(code(&run(&["check", "nonneg-on-reals", r#"{"coeffs":["1","0","1"]}"#])), 0);
    assert_eq!(code(&run(&["check", "nonneg-on-reals", r#"{"coeffs":["-1","0","1"]}"#])), 1);
    assert_eq!(
        code(&run(&["check", "dominance", r#"{"coeffs":["2","1"]}"#, r#"{"coeffs":["1","1"]}"#])),
        0
    );
    assert_eq!(
        code(&run(&["check", "dominance", r#"{"coeffs":["1","1"]}"#, r#"{"coeffs":["2","1"]}"#])),
        1
    );
    assert_eq!(code(&run(&["check", "multiplier-n", "--factorial-inverse", "--n", "5"])), 0);

    let out = run(&["check", "pf-minors", r#"{"coeffs":["1","1","0","1"]}"#, "--r", "4"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["witness"]["det"], "-1");

    assert_eq!(code(&run(&["check", "real-rooted", "{not json"])), 2);
    assert_eq!(code(&run(&["check", "real-rooted", "/nonexistent/poly.json"])), 2);
    assert_eq!(code(&run(&["check", "interlace", eul])), 2);
    assert_eq!(code(&run(&["check", "bogus", eul])), 2);
}

#[test]
fn transform_and_op_examples() {
    assert_eq!(coeffs(&run(&["transform", "e", r#"{"coeffs":["0","0","1"]}"#])), ["0", "1", "2"]);
    let x = temp_poly("x", r#"{"coeffs":["0","1"]}"#);
    let xs = x.to_str().unwrap();
    assert_eq!(coeffs(&run(&["op", "diamond", xs, xs])), ["0", "1", "2"]);
    let sq = r#"{"coeffs":["1","2","1"]}"#;
    assert_eq!(coeffs(&run(&["op", "hadamard", sq, sq])), ["1", "4", "1"]);
    assert_eq!(
        coeffs(&run(&["transform", "e-inv", r#"{"coeffs":["0","1","2"]}"#])),
        ["0", "0", "1"]
    );
    assert_eq!(coeffs(&run(&["transform", "reflect", r#"{"coeffs":["0","1"]}"#])), ["-1", "-1"]);
    assert_eq!(
        coeffs(&run(&[
            "op",
            "multisect",
            r#"{"coeffs":["1","2","3","4"]}"#,
            "--step",
            "2",
            "--offset",
            "1"
        ])),
        ["2", "4"]
    );
    assert_eq!(
        coeffs(&run(&[
            "op",
            "phi",
            r#"{"coeffs":["0","1"]}"#,
            "--F",
            r#"[{"coeffs":["0","1"]},{"coeffs":["1"]}]"#
        ])),
        ["1", "0", "1"]
    );
    assert_eq!(coeffs(&run(&["op", "multiplier-apply", sq, "--ones"])), ["1", "2", "1"]);
    for name in ["sharp", "schur", "hermite-poulain"] {
        assert_eq!(code(&run(&["op", name, sq, sq])), 0, "{name}");
    }
    assert_eq!(
        code(&run(&[
            "op",
            "dot",
            sq,
            sq,
            "--alpha",
            "0",
            "--beta",
            "1",
            "--lambda",
            "factorial_inverse"
        ])),
        0
    );
    assert_eq!(code(&run(&["op", "circ", sq, sq, "--alpha", "1/2"])), 0);
    assert_eq!(code(&run(&["op", "hadamard", sq])), 2);
    assert_eq!(code(&run(&["op", "nope", sq])), 2);
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "lemmas-4-3-4-5", "--max-n", "20"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["failed"], 0);
    assert!(r["passed"].as_u64().unwrap() > 0);

    let again = json_of(&run(&["verify", "lemmas-4-3-4-5", "--max-n", "20", "--jobs", "3"]));
    assert_eq!(r["cases"], again["cases"]);

    let out = run(&["verify", "cor-6-10", "--max-n", "4"]);
    assert_eq!(code(&out), 1);
    let r = json_of(&out);
    let fails: Vec<&Value> = r["cases"].as_array().unwrap().iter().filter(|c| c["verdict"] == false).collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|c| c["witness"].is_object() && c["reproduce"].is_string()));

    let csv = run(&["verify", "thm-6-4", "--max-n", "3", "--csv"]);
    let text = String::from_utf8_lossy(&csv.stdout);
    assert!(text.starts_with("family,n,params,verdict"));
    assert_eq!(text.lines().count(), 1 + 6 * 3);

    assert_eq!(code(&run(&["verify", "no-such-suite"])), 2);
}
