//! Implementations of the subcommands. Each returns the process exit code.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use strictimp::alba::{canonical_text, run_alba_with, AlbaOptions, AlbaResult};
use strictimp::alc::{check_derivation, parse_product, run_alc};
use strictimp::axioms::Axiom;
use strictimp::classify::{build_signed_tree, find_certificate, Sign};
use strictimp::oracle::{
    catalog, enumerate_binary, enumerate_ternary, find_counterexample, sample_binary,
    sample_ternary, validate, Algebra, AlgebraSpec, Assignment, FiniteBdrg, DEFAULT_BUDGET,
};
use strictimp::prover::{check_proof, decide, Limits, Outcome, RuleSet};
use strictimp::repro::{self, ReproError, ReproOptions, Target};
use strictimp::syntax::{
    parse_consecution, parse_formula, parse_inequality, parse_quasi, parse_structure, AtomKind,
    Formula, Inequality, Language, Name,
};
use strictimp::synth::{synthesize_rule, StructuralRule};

use crate::{CliError, Emit, ParseKind, ProofEmit, ProveArgs, Semantics};

const VARIABLE_NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

fn print_json(value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(CliError::internal)?;
    println!("{text}");
    Ok(())
}

fn to_json(value: &impl serde::Serialize) -> Result<Value, CliError> {
    serde_json::to_value(value).map_err(CliError::internal)
}

fn si_sequent(text: &str) -> Result<Inequality, CliError> {
    parse_inequality(text, Language::StrictImplication).map_err(CliError::usage)
}

pub fn parse(text: &str, kind: ParseKind) -> Result<u8, CliError> {
    let printed = match kind {
        ParseKind::Formula => {
            let f = parse_formula(text, Language::LambekCalculusPlus).map_err(CliError::usage)?;
            format!("{f}\t{}", f.language())
        }
        ParseKind::Sequent => parse_inequality(text, Language::LambekCalculusPlus)
            .map_err(CliError::usage)?
            .display_sequent(),
        ParseKind::Structure => parse_structure(text).map_err(CliError::usage)?.to_string(),
        ParseKind::Consecution => parse_consecution(text)
            .map_err(CliError::usage)?
            .to_string(),
        ParseKind::Quasi => parse_quasi(text).map_err(CliError::usage)?.to_string(),
    };
    println!("{printed}");
    Ok(0)
}

pub fn classify(text: &str, emit: Emit) -> Result<u8, CliError> {
    let ineq = si_sequent(text)?;
    let cert = find_certificate(&ineq).map_err(CliError::usage)?;
    match emit {
        Emit::Text => match &cert {
            Some(c) => println!("inductive: {c}"),
            None => println!("not inductive"),
        },
        Emit::Json => {
            let lhs = build_signed_tree(&ineq.lhs, Sign::Plus).map_err(CliError::usage)?;
            let rhs = build_signed_tree(&ineq.rhs, Sign::Minus).map_err(CliError::usage)?;
            print_json(&json!({
                "input": ineq.display_sequent(),
                "inductive": cert.is_some(),
                "certificate": to_json(&cert)?,
                "signed_trees": { "lhs": to_json(&lhs)?, "rhs": to_json(&rhs)? },
            }))?;
        }
    }
    Ok(0)
}

pub fn alba(text: &str, eliminate: bool, emit: Emit) -> Result<u8, CliError> {
    let ineq = si_sequent(text)?;
    let opts = AlbaOptions {
        eliminate_single_polarity: eliminate,
        ..AlbaOptions::default()
    };
    let result = run_alba_with(&ineq, None, &opts).map_err(CliError::usage)?;
    let AlbaResult::Success {
        preprocessed,
        outputs,
        traces,
    } = result
    else {
        if let AlbaResult::Failure(state) = result {
            let stuck: Vec<String> = state.inequalities.iter().map(|i| i.to_string()).collect();
            match emit {
                Emit::Text => eprintln!(
                    "no pure output; stuck at {} => {}",
                    stuck.join(" ; "),
                    state.goal
                ),
                Emit::Json => print_json(&json!({
                    "input": ineq.display_sequent(),
                    "error": "no pure output",
                    "stuck": { "inequalities": stuck, "goal": state.goal.to_string() },
                }))?,
            }
        }
        return Ok(1);
    };
    let results: Vec<String> = outputs.iter().map(canonical_text).collect();
    match emit {
        Emit::Text => results.iter().for_each(|r| println!("{r}")),
        Emit::Json => print_json(&json!({
            "input": ineq.display_sequent(),
            "preprocessed": preprocessed.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            "results": results,
            "trace": to_json(&traces)?,
        }))?,
    }
    Ok(0)
}

/// Rename variables to `p, q, r, ...` in order of first occurrence.
fn tidy_names(ineq: &Inequality) -> Inequality {
    let mut order: Vec<Name> = Vec::new();
    ineq.lhs.atoms_in_order(AtomKind::Var, &mut order);
    ineq.rhs.atoms_in_order(AtomKind::Var, &mut order);
    let mut seen = Vec::new();
    for v in order {
        if !seen.contains(&v) {
            seen.push(v);
        }
    }
    if seen.len() > VARIABLE_NAMES.len() {
        return ineq.clone();
    }
    let binding: BTreeMap<Name, Formula> = seen
        .into_iter()
        .zip(VARIABLE_NAMES)
        .map(|(v, n)| (v, Formula::var(n)))
        .collect();
    ineq.substitute(&binding)
}

pub fn alc(text: &str, emit: Emit) -> Result<u8, CliError> {
    let ineq = si_sequent(text)?;
    let Some(d) = run_alc(&ineq).map_err(CliError::usage)? else {
        eprintln!(
            "no product-language correspondent found for {}",
            ineq.display_sequent()
        );
        return Ok(1);
    };
    check_derivation(&d)
        .map_err(|e| CliError::Internal(format!("derivation does not check: {e}")))?;
    let result = d
        .result()
        .ok_or_else(|| CliError::internal("derivation does not end in a sequent"))?;
    let tidy = tidy_names(result).display_sequent();
    match emit {
        Emit::Text => println!("{tidy}"),
        Emit::Json => print_json(&json!({
            "input": ineq.display_sequent(),
            "correspondent": tidy,
            "derivation": to_json(&d)?,
        }))?,
    }
    Ok(0)
}

pub fn synthesize(source: &str, name: Option<&str>, emit: Emit) -> Result<u8, CliError> {
    let rule = match StructuralRule::named(source) {
        Some(mut rule) => {
            if let Some(n) = name {
                rule.name = n.to_string();
            }
            rule
        }
        None => {
            let sigma = parse_product(source).map_err(CliError::usage)?;
            synthesize_rule(name.unwrap_or("sigma"), &sigma).map_err(CliError::usage)?
        }
    };
    match emit {
        Emit::Text => {
            println!("{rule}");
            println!("good: {}", rule.is_good());
            println!("subformula property: {}", rule.preserves_subformula());
        }
        Emit::Json => print_json(&to_json(&rule)?)?,
    }
    Ok(0)
}

/// A named system, or the base calculus extended by the rules in a JSON
/// file holding one rule or a list of rules.
fn rule_set(system: &str) -> Result<RuleSet, CliError> {
    let path = Path::new(system);
    if !path.is_file() {
        return RuleSet::system(system).map_err(|_| {
            let names: Vec<&str> = RuleSet::system_names().collect();
            CliError::Usage(format!(
                "`{system}` is neither a rule file nor a system ({})",
                names.join(", ")
            ))
        });
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{system}: {e}")))?;
    let rules: Vec<StructuralRule> = match serde_json::from_str::<Vec<StructuralRule>>(&text) {
        Ok(rules) => rules,
        Err(_) => vec![serde_json::from_str::<StructuralRule>(&text)
            .map_err(|e| CliError::Usage(format!("{system}: {e}")))?],
    };
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("custom");
    Ok(RuleSet::new(name, rules))
}

pub fn prove(args: &ProveArgs, deadline: Option<Instant>) -> Result<u8, CliError> {
    let rules = rule_set(&args.system)?;
    let sequent = parse_consecution(&args.sequent).map_err(CliError::usage)?;
    let limits = Limits {
        depth: args.depth,
        max_size: args.max_size,
        deadline,
        ..Limits::default()
    };
    let outcome = decide(&sequent, &rules, &limits).map_err(CliError::usage)?;
    let (code, status) = match &outcome {
        Outcome::Proved(d) => {
            check_proof(d, &rules).map_err(|e| {
                CliError::Internal(format!("found derivation does not check: {e:?}"))
            })?;
            (0, "proved")
        }
        Outcome::Unknown => (1, "unknown"),
        Outcome::Refuted { .. } => (2, "refuted"),
    };
    match args.emit {
        ProofEmit::Tree => {
            println!("{status} in {}: {sequent}", rules.name);
            match &outcome {
                Outcome::Proved(d) => print!("{}", d.render()),
                Outcome::Refuted { algebra } => println!("fails on {algebra}"),
                Outcome::Unknown => {}
            }
        }
        ProofEmit::Json => {
            let mut out = json!({
                "sequent": sequent.to_string(),
                "system": rules.name,
                "outcome": status,
            });
            match &outcome {
                Outcome::Proved(d) => out["derivation"] = to_json(d)?,
                Outcome::Refuted { algebra } => out["algebra"] = json!(algebra),
                Outcome::Unknown => {}
            }
            print_json(&out)?;
        }
    }
    Ok(code)
}

fn find_pair(pair: &str) -> Result<Axiom, CliError> {
    let axiom = Axiom::from_correspondent_name(pair)
        .or_else(|| pair.parse::<Axiom>().ok())
        .ok_or_else(|| CliError::Usage(format!("unknown pair `{pair}`")))?;
    if axiom.correspondent().is_none() {
        return Err(CliError::Usage(format!(
            "{axiom} has no product-language correspondent"
        )));
    }
    Ok(axiom)
}

type Candidate = (Box<dyn Algebra + Send + Sync>, Value);

fn equiv_algebras(
    size: usize,
    semantics: Semantics,
    samples: usize,
    seed: u64,
) -> Result<Vec<Candidate>, CliError> {
    Ok(match semantics {
        Semantics::Binary => {
            let frames = if size <= 4 {
                enumerate_binary(size).map_err(CliError::usage)?.collect()
            } else {
                sample_binary(size, samples, seed).map_err(CliError::usage)?
            };
            frames
                .into_iter()
                .map(|f| (Box::new(f.dual()) as _, json!(f.pairs())))
                .collect()
        }
        Semantics::Ternary => {
            let frames = if size <= 2 {
                enumerate_ternary(size).map_err(CliError::usage)?.collect()
            } else {
                sample_ternary(size, samples, seed).map_err(CliError::usage)?
            };
            frames
                .into_iter()
                .map(|f| (Box::new(f.dual()) as _, json!(f.triples())))
                .collect()
        }
        Semantics::Catalog => catalog()
            .into_iter()
            .map(|a| {
                let name = a.name();
                (Box::new(a) as _, json!(name))
            })
            .collect(),
    })
}

pub fn equiv(
    pair: &str,
    size: usize,
    semantics: Semantics,
    samples: usize,
    seed: u64,
) -> Result<u8, CliError> {
    let axiom = find_pair(pair)?;
    let sequent = axiom.sequent();
    let product = axiom.correspondent().expect("checked above");
    let algebras = equiv_algebras(size, semantics, samples, seed)?;
    let mut disagreements = 0;
    let mut example = Value::Null;
    for (alg, description) in &algebras {
        let a = validate(alg.as_ref(), &sequent).map_err(CliError::usage)?;
        let b = validate(alg.as_ref(), &product).map_err(CliError::usage)?;
        if a != b {
            if disagreements == 0 {
                example =
                    json!({ "frame": description, "sequent_valid": a, "correspondent_valid": b });
            }
            disagreements += 1;
        }
    }
    print_json(&json!({
        "axiom": axiom.tag(),
        "sequent": sequent.display_sequent(),
        "correspondent": product.display_sequent(),
        "semantics": format!("{semantics:?}").to_lowercase(),
        "size": size,
        "seed": seed,
        "algebras": algebras.len(),
        "disagreements": disagreements,
        "example": example,
    }))?;
    Ok(u8::from(disagreements > 0))
}

fn assignment_json(a: &Assignment) -> Value {
    json!({ "vars": a.vars, "nominals": a.nominals, "conominals": a.conominals })
}

pub fn validate_file(path: &Path, text: &str) -> Result<u8, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let spec: AlgebraSpec = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let alg = FiniteBdrg::from_spec(&spec).map_err(CliError::usage)?;
    let q = parse_quasi(text).map_err(CliError::usage)?;
    let counterexample = find_counterexample(&alg, &q, DEFAULT_BUDGET).map_err(CliError::usage)?;
    print_json(&json!({
        "algebra": alg.name(),
        "sequent": q.to_string(),
        "valid": counterexample.is_none(),
        "counterexample": counterexample.as_ref().map(assignment_json),
    }))?;
    Ok(u8::from(counterexample.is_some()))
}

pub fn repro(
    target: &str,
    seed: u64,
    samples: usize,
    deadline: Option<Instant>,
) -> Result<u8, CliError> {
    let targets: Vec<Target> = if target == "all" {
        Target::ALL.to_vec()
    } else {
        vec![target.parse().map_err(CliError::usage)?]
    };
    let opts = ReproOptions {
        seed,
        samples,
        deadline,
    };
    let mut code = 0;
    for t in targets {
        let report = match repro::run(t, &opts) {
            Ok(r) => r,
            Err(e @ ReproError::Budget(_)) => {
                eprintln!("strictimp: {e}");
                return Ok(1);
            }
            Err(e) => return Err(CliError::internal(e)),
        };
        println!("# {t}");
        print!("{}", report.render());
        if !report.is_clean() {
            eprint!("{t} differs from the golden file:\n{}", report.diff());
            code = 1;
        }
    }
    Ok(code)
}
