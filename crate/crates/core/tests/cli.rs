use std::process::{Command, Output};

use serde_json::Value;
use symkb::formula::parse;

fn symkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symkb"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn decide_reports_verdicts_and_exit_codes() {
    let valid = symkb(&["decide", "--logic", "kb", "--formula", "~#p -> [] ~ [] #p"]);
    assert_eq!(valid.status.code(), Some(0));
    assert_eq!(stdout(&valid).trim(), "valid");

    let invalid = symkb(&[
        "decide",
        "--logic",
        "kb",
        "--formula",
        "[] #p -> #p",
        "--json",
    ]);
    assert_eq!(invalid.status.code(), Some(1));
    let v = json(&invalid);
    assert_eq!(v["verdict"], "invalid");
    assert!(v["countermodel"]["states"].is_array());

    let unknown = symkb(&[
        "decide",
        "--logic",
        "kb",
        "--formula",
        "[+^2] false",
        "--max-nodes",
        "0",
    ]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn decide_rejects_bad_input() {
    let bad = symkb(&["decide", "--logic", "kb", "--formula", "p & x"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad formula"));
    assert_eq!(
        symkb(&["decide", "--logic", "s5", "--formula", "x"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(symkb(&["--help"]).status.code(), Some(0));
}

#[test]
fn subst_commands() {
    let sigma = r#"{"map":{"x":"x & [+] false"}}"#;
    let applied = symkb(&["subst", "apply", "--subst", sigma, "--formula", "x | #p"]);
    assert!(applied.status.success());
    assert_eq!(
        parse(stdout(&applied).trim()).unwrap(),
        parse("(x & [+] false) | #p").unwrap()
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("top.json");
    std::fs::write(&path, r#"{"map":{"x":"true"}}"#).unwrap();
    let composed = symkb(&[
        "subst",
        "compose",
        "--first",
        sigma,
        "--then",
        path.to_str().unwrap(),
    ]);
    assert!(composed.status.success());
    let image = json(&composed)["map"]["x"].as_str().unwrap().to_string();
    assert_eq!(parse(&image).unwrap(), parse("true & [+] false").unwrap());

    let equiv = symkb(&[
        "subst", "equiv", "--left", sigma, "--right", sigma, "--logic", "ktb",
    ]);
    assert_eq!(stdout(&equiv).trim(), "true");
    let not_equiv = symkb(&[
        "subst",
        "equiv",
        "--left",
        sigma,
        "--right",
        path.to_str().unwrap(),
    ]);
    assert_eq!(not_equiv.status.code(), Some(1));

    let phi = stdout(&symkb(&["gen", "phi"]));
    let unifier = symkb(&[
        "subst",
        "unifier",
        "--subst",
        sigma,
        "--formula",
        phi.trim(),
    ]);
    assert_eq!(stdout(&unifier).trim(), "true");
}

#[test]
fn gen_commands() {
    let sigma = json(&symkb(&["gen", "sigma", "--k", "1"]));
    assert_eq!(sigma["map"]["x"], "x & [+] false");
    for family in ["tau", "lambda", "mu"] {
        let out = symkb(&["gen", family, "--k", "2"]);
        assert!(out.status.success(), "{family}");
        assert!(json(&out)["map"]["x"].is_string());
    }
    assert_eq!(
        stdout(&symkb(&["gen", "phi"])).trim(),
        "(x -> [+] x) & (~x -> [-] ~x)"
    );

    let chain = json(&symkb(&["gen", "chain", "--k", "1"]));
    assert_eq!(chain["states"].as_array().unwrap().len(), 4);
    assert_eq!(chain["val"]["#p"], serde_json::json!([1]));
    assert_eq!(chain["val"]["#q"], serde_json::json!([2]));
}

#[test]
fn gen_bridge_joins_chains() {
    let dir = tempfile::tempdir().unwrap();
    let left = dir.path().join("left.json");
    let right = dir.path().join("right.json");
    let mut chain = json(&symkb(&["gen", "chain", "--k", "1"]));
    std::fs::write(&left, chain.to_string()).unwrap();
    chain["point"] = serde_json::json!(3);
    std::fs::write(&right, chain.to_string()).unwrap();
    for extra in [&[][..], &["--reflexive"][..]] {
        let mut args = vec![
            "gen",
            "bridge",
            "--left",
            left.to_str().unwrap(),
            "--right",
            right.to_str().unwrap(),
        ];
        args.extend(["--k", "1"]);
        args.extend(extra);
        let out = symkb(&args);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let b = json(&out);
        assert!(b["model"]["states"].as_array().unwrap().len() > 4);
        assert_ne!(b["root"], b["root_prime"]);
    }
    let missing = symkb(&[
        "gen",
        "bridge",
        "--left",
        "nope.json",
        "--right",
        "nope.json",
        "--k",
        "1",
    ]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn lemmas_run_and_show() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = symkb(&[
        "lemmas",
        "run",
        "--logic",
        "kb",
        "--k-max",
        "1",
        "--l-max",
        "1",
        "--seed",
        "5",
        "--json",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 failed, 0 indeterminate"));
    let first = std::fs::read(&report).unwrap();
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["config"]["seed"], 5);
    let check = &v["checks"][0];
    for key in ["id", "params", "status", "evidence"] {
        assert!(!check[key].is_null(), "{key}");
    }
    assert_eq!(v["out_of_scope"][1]["id"], "lemma:7:K");

    symkb(&[
        "lemmas",
        "run",
        "--logic",
        "kb",
        "--k-max",
        "1",
        "--l-max",
        "1",
        "--seed",
        "5",
        "--json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&report).unwrap(), first);

    let failing = symkb(&[
        "lemmas",
        "run",
        "--logic",
        "kb",
        "--k-max",
        "1",
        "--l-max",
        "1",
        "--max-nodes",
        "0",
    ]);
    assert_eq!(failing.status.code(), Some(1));

    let show = symkb(&["lemmas", "show", "easy:lemma:b"]);
    assert!(show.status.success());
    assert!(stdout(&show).contains("easy:lemma:b"));
    assert_eq!(symkb(&["lemmas", "show", "no:such"]).status.code(), Some(3));
}
