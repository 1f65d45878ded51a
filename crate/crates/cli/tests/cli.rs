use std::io::Write;
use std::process::{Command, Output};

fn strictimp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strictimp"))
        .args(args)
        .env_remove("WORKBENCH_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn alc_prints_the_correspondent() {
    let o = strictimp(&["alc", "q |- p->p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "p * q |- p");
}

#[test]
fn alc_reports_missing_correspondents() {
    let o = strictimp(&["alc", "top -> bot |- bot"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn alba_emits_json() {
    let o = strictimp(&["alba", "(p->q)&(q->r) |- p->r"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["results"][0], "forall i j: i * j <= (i * j) * j");
    assert!(v["preprocessed"].is_array());
    assert!(!v["trace"][0].as_array().unwrap().is_empty());
    assert_eq!(v["input"], "(p -> q) & (q -> r) |- p -> r");
}

#[test]
fn alba_fails_without_a_certificate() {
    let o = strictimp(&["alba", "(q -> p) -> p |- q -> p"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "no pure output");
}

#[test]
fn classify_reports_certificates() {
    let o = strictimp(&["classify", "(q -> p) -> p |- q -> p"]);
    assert_eq!(stdout(&o).trim(), "not inductive");
    let o = strictimp(&["classify", "--emit", "json", "p |- q -> p"]);
    let v = json(&o);
    assert_eq!(v["inductive"], true);
    assert_eq!(v["signed_trees"]["rhs"]["sign"], "Minus");
}

#[test]
fn prove_exit_codes() {
    let proved = strictimp(&["prove", "--system", "rwh", "(p->q)&(q->r) |- p->r"]);
    assert_eq!(proved.status.code(), Some(0));
    assert!(stdout(&proved).contains("[tr]"));
    let refuted = strictimp(&["prove", "p * q |- p"]);
    assert_eq!(refuted.status.code(), Some(2));
    let unknown = strictimp(&["prove", "--depth", "1", "p & q |- q & p"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn prove_emits_checkable_json() {
    let o = strictimp(&[
        "prove",
        "--emit",
        "json",
        "p & (q | r) |- (p & q) | (p & r)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["outcome"], "proved");
    let tree: strictimp::prover::DerivationTree =
        serde_json::from_value(v["derivation"].clone()).unwrap();
    assert_eq!(
        strictimp::prover::check_proof(&tree, &strictimp::prover::RuleSet::bdfnl()),
        Ok(())
    );
}

#[test]
fn prove_accepts_rule_files() {
    let rule = strictimp(&["synthesize", "p * q |- p", "--name", "wl"]);
    assert_eq!(rule.status.code(), Some(0));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&rule.stdout).unwrap();
    let path = file.path().to_str().unwrap();
    let o = strictimp(&["prove", "--system", path, "p * q |- p"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[wl]"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(
        strictimp(&["prove", "--bogus", "x"]).status.code(),
        Some(64)
    );
    assert_eq!(strictimp(&["prove", "p |- "]).status.code(), Some(64));
    assert_eq!(
        strictimp(&["prove", "--system", "nope", "p |- p"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        strictimp(&["prove", "--depth", "0", "p |- p"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        strictimp(&["synthesize", "p & q |- p"]).status.code(),
        Some(64)
    );
    assert_eq!(strictimp(&["repro", "table9"]).status.code(), Some(64));
    assert_eq!(strictimp(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(strictimp(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_must_be_numeric() {
    let o = Command::new(env!("CARGO_BIN_EXE_strictimp"))
        .args(["prove", "p |- p"])
        .env("WORKBENCH_BUDGET_MS", "soon")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn exhausted_budget_stops_repro() {
    let o = Command::new(env!("CARGO_BIN_EXE_strictimp"))
        .args(["repro", "binary-correspondents"])
        .env("WORKBENCH_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn oracle_equiv_compares_pairs() {
    let o = strictimp(&[
        "oracle",
        "equiv",
        "--pair",
        "tr",
        "--size",
        "3",
        "--semantics",
        "binary",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["algebras"], 512);
    assert_eq!(v["disagreements"], 0);
    let o = strictimp(&["oracle", "equiv", "--pair", "W'", "--semantics", "ternary"]);
    assert_eq!(json(&o)["algebras"], 256);
    assert_eq!(
        strictimp(&["oracle", "equiv", "--pair", "Sym"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn oracle_validate_reads_algebra_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // Two-element chain with the meet as product.
    file.write_all(
        br#"{"name": "chain2", "size": 2, "order": [[0, 1]], "product": [[0, 0], [0, 1]]}"#,
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let valid = strictimp(&[
        "oracle",
        "validate",
        "--algebra",
        path,
        "--sequent",
        "p & (p -> q) |- q",
    ]);
    assert_eq!(valid.status.code(), Some(0));
    assert_eq!(json(&valid)["valid"], true);
    let invalid = strictimp(&[
        "oracle",
        "validate",
        "--algebra",
        path,
        "--sequent",
        "p |- q",
    ]);
    assert_eq!(invalid.status.code(), Some(1));
    assert!(json(&invalid)["counterexample"]["vars"].is_object());
}

#[test]
fn repro_targets_match_their_goldens() {
    for target in [
        "table1-alba",
        "table3-alc",
        "appendix-a",
        "ternary-correspondents",
        "binary-correspondents",
    ] {
        let o = strictimp(&["repro", target]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{target}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(stdout(&o).starts_with(&format!("# {target}\n")));
    }
}

#[test]
fn seeded_output_is_stable() {
    let args = [
        "oracle",
        "equiv",
        "--pair",
        "c",
        "--size",
        "5",
        "--samples",
        "50",
        "--seed",
        "9",
    ];
    assert_eq!(strictimp(&args).stdout, strictimp(&args).stdout);
}

#[test]
fn parse_normalizes_text() {
    let o = strictimp(&["parse", "--kind", "formula", "p->q->r"]);
    assert_eq!(stdout(&o).trim(), "(p -> q) -> r\tL_SI");
    let o = strictimp(&["parse", "--kind", "consecution", "p o (q ^ r) |- p*q"]);
    assert_eq!(o.status.code(), Some(0));
}
