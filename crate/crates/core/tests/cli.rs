//! The expression language and the command-line contract.

use std::process::{Command, Output};

use gjs_cup::cli::expr::ScalarLit;
use gjs_cup::cli::{parse, run, Expr};
use num_rational::BigRational;
use proptest::prelude::*;

fn scalar_lit() -> impl Strategy<Value = ScalarLit> {
    prop_oneof![
        (0i64..=9, 1i64..=9).prop_map(|(n, d)| ScalarLit::Rational(BigRational::new(n.into(), d.into()))),
        (-4i64..=4).prop_map(ScalarLit::QPow),
        Just(ScalarLit::Delta),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::One),
        (1i64..=3).prop_map(Expr::Cup),
        (2usize..=3, 0usize..=1).prop_map(|(m, i)| Expr::V { m, i }),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (scalar_lit(), inner.clone()).prop_map(move |(s, e)| Expr::Scaled(s, b(e))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mult(b(x), b(y))),
            (inner.clone(), inner).prop_map(move |(x, y)| Expr::Bullet(b(x), b(y))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_round_trips(e in expr()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e);
    }
}

fn gjs(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjs-cup"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .env_remove("GJS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(gjs(&["eval", "cup * cup"], dir.path()).status.code(), Some(0));
    assert_eq!(gjs(&["dims"], dir.path()).status.code(), Some(0));
    let bad = gjs(&["eval", "q^-1 (cup + 1"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1, column 12"));
    assert_eq!(gjs(&["no-such-command"], dir.path()).status.code(), Some(2));
    assert_eq!(gjs(&["eval", "v[3,2]"], dir.path()).status.code(), Some(2));
    assert_eq!(gjs(&["eval", "v[40,0]"], dir.path()).status.code(), Some(2));
    assert_eq!(gjs(&["--q0", "-1", "dims"], dir.path()).status.code(), Some(2));
    assert_eq!(gjs(&["aop-expansion", "--i", "1"], dir.path()).status.code(), Some(2));
    // a check that is run but does not reach its bound reports failure
    assert_eq!(gjs(&["lemma-ri", "--grid", "101", "--bounds", "100", "--max-i", "5"], dir.path()).status.code(), Some(1));
}

#[test]
fn eval_output_shape() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["gjs-cup", "eval", "cup * cup"], &mut out, &mut err);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    for key in ["check", "params", "pass", "data"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["data"]["text"], "(q^2)·1 + [()] + [()()]");
}

#[test]
fn numeric_mode_evaluates_scalars() {
    let mut out = Vec::new();
    let code = run(["gjs-cup", "--q0", "2", "eval", "delta cup"], &mut out, &mut Vec::new());
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["params"]["q0"], "2");
    assert!(v.to_string().contains("\"4\""), "{v}");
}

#[test]
fn cache_dir_precedence() {
    use gjs_cup::cli::cache_dir;
    let flag = std::path::Path::new("/tmp/flag-dir");
    std::env::set_var("GJS_CACHE_DIR", "/tmp/env-dir");
    assert_eq!(cache_dir(Some(flag)), flag);
    assert_eq!(cache_dir(None), std::path::Path::new("/tmp/env-dir"));
    std::env::set_var("GJS_CACHE_DIR", "");
    assert_eq!(cache_dir(None), std::path::Path::new(".gjs-cache"));
    std::env::remove_var("GJS_CACHE_DIR");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["eval", "v[3,0] . cup^2 . v[2,0] - delta v[3,1] * cup"],
        vec!["--format", "text", "aop-orth"],
        vec!["--format", "csv", "moments", "--max-m", "6"],
        vec!["--seed", "99", "certificate", "--count", "2", "--grid", "1001"],
    ] {
        let a = gjs(&args, dir.path());
        let b = gjs(&args, dir.path());
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn vn_is_cached() {
    let dir = tempfile::tempdir().unwrap();
    let first = gjs(&["vn", "--n", "4"], dir.path());
    assert_eq!(first.status.code(), Some(0));
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(entries > 0, "nothing cached");
    let second = gjs(&["vn", "--n", "4"], dir.path());
    assert_eq!(first.stdout, second.stdout);
}
