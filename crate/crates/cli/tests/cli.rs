use std::process::{Command, Output};

use serde_json::Value;

fn symex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("single JSON document")
}

#[test]
fn compute_examples() {
    let out = symex(&[
        "compute",
        "--roots",
        "2,3,4",
        "--i",
        "3",
        "--method",
        "extraction",
    ]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "24\n"));

    let out = symex(&["compute", "--roots", "2,3,4", "--i", "0"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "1\n"));

    let out = symex(&[
        "compute",
        "--roots",
        "2,3",
        "--i",
        "5",
        "--method",
        "extraction",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).is_empty());

    let out = symex(&[
        "compute", "--roots", "2,3", "--i", "5", "--method", "direct",
    ]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "0\n"));
}

#[test]
fn compute_usage_errors_exit_two() {
    for args in [
        &["compute", "--roots", "2,0,4", "--i", "1"][..],
        &["compute", "--roots", "a,b", "--i", "1"],
        &["compute", "--roots", "2,3", "--i", "1", "--method", "fast"],
        &["compute", "--i", "1"],
    ] {
        assert_eq!(code(&symex(args)), 2, "{args:?}");
    }
}

#[test]
fn compute_json_schema() {
    let out = symex(&["compute", "--roots", "2,3,4", "--i", "3", "--json"]);
    let v = json(&out);
    assert_eq!(v["value"], "24");
    assert_eq!(v["method"], "extraction");
    assert_eq!(v["breakdown"]["head"], "84");
    let terms = v["breakdown"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["h"], 1);
    assert_eq!(terms[0]["weight"], "-1");
    assert_eq!(terms[0]["bracket_total"], "65");
    assert_eq!(terms[1]["weight"], "1");

    let v = json(&symex(&[
        "compute", "--roots", "2,3,4", "--i", "2", "--method", "dp", "--json",
    ]));
    assert_eq!(v["value"], "26");
    assert!(v.get("breakdown").is_none());
}

#[test]
fn big_values_stay_exact_in_json() {
    let roots = ["999999999999"; 12].join(",");
    let v = json(&symex(&[
        "compute", "--roots", &roots, "--i", "6", "--json",
    ]));
    let value = v["value"].as_str().unwrap();
    // C(12, 6) * m^6
    let expected =
        num_bigint::BigInt::from(924) * num_bigint::BigInt::from(999_999_999_999u64).pow(6);
    assert_eq!(value, expected.to_string());
}

#[test]
fn explain_lists_brackets() {
    let out = symex(&["compute", "--roots", "2,3,4", "--i", "3", "--explain"]);
    let text = stdout(&out);
    assert!(text.contains("head: C(9, 3) = 84"));
    assert!(text.contains("h=1 weight=-1"));
    assert!(text.contains("{2,3} C(7, 3) = 35"));
    assert!(text.ends_with("total: 24\n"));

    let out = symex(&[
        "compute",
        "--roots",
        "2,3,4",
        "--i",
        "3",
        "--explain",
        "--explain-limit",
        "2",
    ]);
    assert!(stdout(&out).contains("entries omitted"));
}

#[test]
fn coeffs_examples() {
    let out = symex(&["coeffs", "--n", "5", "--i", "3", "--h-max", "3"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<Vec<String>> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    assert_eq!(
        rows,
        vec![
            vec!["1", "1", "1", "1"],
            vec!["2", "-3", "-3", "1"],
            vec!["3", "6", "6", "1"]
        ]
    );

    let out = symex(&["coeffs", "--n", "4", "--i", "4", "--h-max", "1"]);
    assert_eq!(stdout(&out).lines().count(), 2);

    assert_eq!(
        code(&symex(&["coeffs", "--n", "3", "--i", "5", "--h-max", "2"])),
        2
    );
    let v = json(&symex(&[
        "coeffs", "--n", "6", "--i", "2", "--h-max", "4", "--json",
    ]));
    assert_eq!(v["consistent"], true);
    assert_eq!(v["rows"][3]["closed"], "-35");
}

#[test]
fn verify_single_suites() {
    let out = symex(&["verify", "--suite", "convolution"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("PASS"))
            .count()
            >= 3
    );
    assert!(!stdout(&out).contains("FAIL"));

    let out = symex(&["verify", "--suite", "equivalence", "--seed", "42"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("# symex verify suite=equivalence seed=42"));

    assert_eq!(code(&symex(&["verify", "--suite", "nosuch"])), 2);

    let v = json(&symex(&[
        "verify",
        "--suite",
        "gf",
        "--truncation",
        "12",
        "--json",
    ]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["truncation"], 12);
}

#[test]
fn bench_examples() {
    let out = symex(&[
        "bench",
        "--n",
        "18",
        "--i",
        "4",
        "--methods",
        "dp,extraction",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["agree"], true);
    assert_eq!(cells[0]["median_ns"].as_object().unwrap().len(), 2);

    let out = symex(&[
        "bench",
        "--n",
        "5",
        "--i",
        "2",
        "--methods",
        "direct",
        "--json",
    ]);
    assert_eq!(json(&out)[0]["median_ns"].as_object().unwrap().len(), 1);

    let out = symex(&["bench", "--methods", "dp"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 2 + 12);

    assert_eq!(code(&symex(&["bench", "--methods", "fastest"])), 2);
}

#[test]
fn bench_with_fixed_roots() {
    let out = symex(&[
        "bench",
        "--roots",
        "2,3,4",
        "--i",
        "3",
        "--methods",
        "dp,extraction,direct",
        "--json",
    ]);
    let v = json(&out);
    assert_eq!(v[0]["value"], "24");
    assert_eq!(v[0]["n"], 3);
}

#[test]
fn specialize_examples() {
    let out = symex(&["specialize", "--family", "pascal", "--rows", "4"]);
    assert_eq!(stdout(&out).lines().last(), Some("1 4 6 4 1"));
    let out = symex(&["specialize", "--family", "stirling1", "--rows", "3"]);
    assert_eq!(stdout(&out).lines().last(), Some("1 6 11 6"));
    let out = symex(&["specialize", "--family", "stirling1", "--rows", "1"]);
    assert_eq!(stdout(&out), "1 1\n");
    assert_eq!(
        code(&symex(&[
            "specialize",
            "--family",
            "catalan",
            "--rows",
            "3"
        ])),
        2
    );
    let v = json(&symex(&[
        "specialize",
        "--family",
        "stirling1",
        "--rows",
        "8",
        "--json",
    ]));
    assert_eq!(v["rows"][7][8], "40320");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["compute", "--roots", "5,1,4,1", "--i", "3", "--explain"][..],
        &["verify", "--suite", "layers", "--seed", "7"],
        &["specialize", "--family", "pascal", "--rows", "6", "--json"],
    ] {
        assert_eq!(symex(args).stdout, symex(args).stdout, "{args:?}");
    }
}
