use std::collections::BTreeSet;

use rayon::prelude::*;
use strictimp::alba::{canonical_text, run_alba, AlbaResult, AlbaStep};
use strictimp::axioms::Axiom;
use strictimp::oracle::{
    enumerate_binary, enumerate_ternary, sample_ternary, validate, validate_quasi, Algebra,
};
use strictimp::syntax::{parse_inequality, parse_quasi, AtomKind, Language, QuasiInequality};

const TABLE: &str = include_str!("../goldens/table1_alba.txt");

fn golden(axiom: Axiom) -> QuasiInequality {
    let line = TABLE
        .lines()
        .find(|l| l.split('\t').next() == Some(axiom.tag()))
        .unwrap_or_else(|| panic!("no golden row for {axiom}"));
    parse_quasi(line.split('\t').nth(1).unwrap()).unwrap()
}

fn output(axiom: Axiom) -> QuasiInequality {
    let result = run_alba(&axiom.sequent(), None).unwrap();
    let outputs = result
        .outputs()
        .unwrap_or_else(|| panic!("{axiom}: {result:?}"));
    assert_eq!(outputs.len(), 1, "{axiom}");
    outputs[0].clone()
}

#[test]
fn outputs_match_the_reference_table() {
    for axiom in Axiom::ALL {
        let ours = output(axiom);
        assert!(ours.is_pure(), "{axiom}: {ours}");
        assert_eq!(
            canonical_text(&ours),
            canonical_text(&golden(axiom)),
            "{axiom}: {ours}"
        );
    }
}

fn agrees_everywhere(axiom: Axiom, algebras: &[Box<dyn Algebra + Send>]) {
    let seq = axiom.sequent();
    let out = output(axiom);
    let bad = algebras
        .par_iter()
        .filter(|a| {
            validate(a.as_ref(), &seq).unwrap() != validate_quasi(a.as_ref(), &out).unwrap()
        })
        .count();
    assert_eq!(
        bad, 0,
        "{axiom}: output disagrees with the sequent on {bad} algebras"
    );
}

#[test]
fn outputs_are_equivalent_on_binary_frames() {
    let algebras: Vec<Box<dyn Algebra + Send>> = (1..=3)
        .flat_map(|n| enumerate_binary(n).unwrap())
        .map(|f| Box::new(f.dual()) as Box<dyn Algebra + Send>)
        .collect();
    for axiom in Axiom::ALL {
        agrees_everywhere(axiom, &algebras);
    }
}

#[test]
fn outputs_are_equivalent_on_ternary_frames() {
    let mut algebras: Vec<Box<dyn Algebra + Send>> = (1..=2)
        .flat_map(|n| enumerate_ternary(n).unwrap())
        .map(|f| Box::new(f.dual()) as Box<dyn Algebra + Send>)
        .collect();
    algebras.extend(
        sample_ternary(3, 200, 7)
            .unwrap()
            .into_iter()
            .map(|f| Box::new(f.dual()) as Box<dyn Algebra + Send>),
    );
    for axiom in Axiom::ALL {
        agrees_everywhere(axiom, &algebras);
    }
}

fn traces(axiom: Axiom) -> Vec<Vec<AlbaStep>> {
    match run_alba(&axiom.sequent(), None).unwrap() {
        AlbaResult::Success { traces, .. } => traces,
        AlbaResult::Failure(st) => panic!("{axiom}: {st:?}"),
    }
}

#[test]
fn every_step_preserves_validity() {
    let mut algebras: Vec<Box<dyn Algebra + Send>> = (1..=3)
        .flat_map(|n| enumerate_binary(n).unwrap())
        .map(|f| Box::new(f.dual()) as Box<dyn Algebra + Send>)
        .collect();
    algebras.extend(
        (1..=2)
            .flat_map(|n| enumerate_ternary(n).unwrap())
            .map(|f| Box::new(f.dual()) as Box<dyn Algebra + Send>),
    );
    for axiom in Axiom::ALL {
        let seq = QuasiInequality::new([], axiom.sequent());
        for trace in traces(axiom) {
            let states: Vec<&QuasiInequality> = std::iter::once(&seq)
                .chain(trace.iter().map(|s| &s.state))
                .collect();
            for pair in states.windows(2) {
                let bad = algebras
                    .par_iter()
                    .filter(|a| {
                        validate_quasi(a.as_ref(), pair[0]).unwrap()
                            != validate_quasi(a.as_ref(), pair[1]).unwrap()
                    })
                    .count();
                assert_eq!(bad, 0, "{axiom}: `{}` to `{}`", pair[0], pair[1]);
            }
        }
    }
}

#[test]
fn fresh_atoms_are_introduced_once() {
    for axiom in Axiom::ALL {
        for trace in traces(axiom) {
            let mut seen = BTreeSet::new();
            for step in &trace {
                for kind in [AtomKind::Nominal, AtomKind::Conominal] {
                    seen.extend(step.state.atoms(kind));
                }
            }
            let mut introduced = BTreeSet::new();
            let mut before = BTreeSet::new();
            for step in &trace {
                let now: BTreeSet<_> = [AtomKind::Nominal, AtomKind::Conominal]
                    .into_iter()
                    .flat_map(|k| step.state.atoms(k))
                    .collect();
                for name in now.difference(&before) {
                    assert!(
                        introduced.insert(name.clone()),
                        "{axiom}: {name} introduced twice"
                    );
                }
                before = now;
            }
            assert_eq!(seen, introduced, "{axiom}");
        }
    }
}

#[test]
fn non_inductive_input_fails() {
    let lob = parse_inequality("(q -> p) -> p |- q -> p", Language::StrictImplication).unwrap();
    assert!(matches!(
        run_alba(&lob, None).unwrap(),
        AlbaResult::Failure(_)
    ));
}
