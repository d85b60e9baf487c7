use std::process::{Command, Output};

use serde_json::Value;

fn semiinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiinf"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn feigin_reports_shift() {
    let out = semiinf(&[
        "verify", "--type", "A", "--rank", "1", "--ell", "3", "--checks", "feigin",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["entries"][0]["status"], "pass");
    assert_eq!(r["entries"][0]["shift"], "t^1");
    assert_eq!(r["config"]["ell"], 3);
}

#[test]
fn sl2_suite_requires_rank_one() {
    let out = semiinf(&[
        "verify", "--type", "A", "--rank", "2", "--ell", "3", "--checks", "sl2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sl2 suite requires rank 1"));
    let ok = semiinf(&["verify", "--checks", "sl2", "--ell", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["entries"][0]["status"], "pass");
}

#[test]
fn bgg_euler_b2() {
    let out = semiinf(&[
        "verify",
        "--checks",
        "bgg-euler",
        "--type",
        "B",
        "--rank",
        "2",
        "--ell",
        "3",
        "--lambda",
        "1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["entries"][0]["status"], "pass");
}

#[test]
fn every_default_check_passes_or_reports() {
    for (t, n) in [("A", "1"), ("A", "2"), ("C", "2")] {
        let out = semiinf(&["verify", "--type", t, "--rank", n, "--ell", "3"]);
        assert_eq!(out.status.code(), Some(0), "{t}{n}");
        let r = json(&out);
        let entries = r["entries"].as_array().unwrap();
        assert_eq!(entries.len(), if n == "1" { 7 } else { 6 });
        for e in entries {
            let expected = if e["name"] == "chformula-compare" {
                "reported-discrepancy"
            } else {
                "pass"
            };
            assert_eq!(e["status"], expected, "{t}{n} {}", e["name"]);
        }
    }
}

#[test]
fn kostant_slices() {
    let out = semiinf(&[
        "char",
        "--formula",
        "kostant",
        "--type",
        "A",
        "--rank",
        "1",
        "--tmax",
        "3",
    ]);
    assert!(out.status.success());
    let s = json(&out);
    assert_eq!(s["format"], "semiinf-series/1");
    let mut sizes = [0; 4];
    for t in s["terms"].as_array().unwrap() {
        sizes[t["tdeg"].as_i64().unwrap() as usize] += 1;
    }
    assert_eq!(sizes, [1, 3, 5, 7]);
}

#[test]
fn quasi_verma_geometric_series() {
    let out = semiinf(&[
        "char",
        "--formula",
        "quasi-verma",
        "--w",
        "e",
        "--lambda",
        "0",
        "--depth",
        "5",
    ]);
    assert!(out.status.success());
    let s = json(&out);
    let weights: Vec<i64> = s["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["weight"][0].as_i64().unwrap())
        .collect();
    assert_eq!(weights, vec![-10, -8, -6, -4, -2, 0]);
    assert!(s["terms"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["coeff"] == "1"));
    assert_eq!(s["regime"], "B");
}

#[test]
fn bgg_dot_a2() {
    let out = semiinf(&["bgg", "--type", "A", "--rank", "2", "--emit", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(
        dot.lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count(),
        6
    );
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 8);
    let again = semiinf(&["bgg", "--type", "A", "--rank", "2", "--emit", "dot"]);
    assert_eq!(dot.as_bytes(), &again.stdout[..]);
}

#[test]
fn parabolic_and_shifted_formulas() {
    let out = semiinf(&[
        "char",
        "--formula",
        "parabolic-local-cohomology",
        "--type",
        "A",
        "--rank",
        "2",
        "--j",
        "1",
        "--tmax",
        "6",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["regime"], "J{1}");
    let out = semiinf(&[
        "char",
        "--formula",
        "semiinf-weyl-shifted",
        "--lambda",
        "1",
        "--w",
        "s1",
    ]);
    assert!(out.status.success());
    let out = semiinf(&[
        "char",
        "--formula",
        "semiinf-weyl-shifted",
        "--lambda",
        "0",
        "--w",
        "s1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["char", "--formula", "nonsense"][..],
        &["char", "--formula", "weyl-module", "--lambda", "1,x"],
        &["char", "--formula", "weyl-module", "--lambda", "-1"],
        &[
            "char",
            "--formula",
            "weyl-module",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "1",
        ],
        &["verify", "--checks", "nope"],
        &["verify", "--ell", "4"],
        &["verify", "--type", "D", "--rank", "3"],
        &["verify", "--type", "G", "--rank", "2", "--ell", "3"],
        &["bgg", "--emit", "svg"],
        &[
            "char",
            "--formula",
            "parabolic-local-cohomology",
            "--type",
            "A",
            "--rank",
            "2",
            "--j",
            "3",
        ],
    ] {
        let out = semiinf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}
