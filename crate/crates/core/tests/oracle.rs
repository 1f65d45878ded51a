use rayon::prelude::*;
use strictimp::axioms::Axiom;
use strictimp::oracle::{
    enumerate_binary, enumerate_ternary, fo_binary, fo_ternary, validate, BinaryFrame, TernaryFrame,
};

fn binary_frames(max: usize) -> Vec<BinaryFrame> {
    (1..=max)
        .flat_map(|n| enumerate_binary(n).unwrap())
        .collect()
}

fn ternary_frames(max: usize) -> Vec<TernaryFrame> {
    (1..=max)
        .flat_map(|n| enumerate_ternary(n).unwrap())
        .collect()
}

#[test]
fn binary_conditions_match_sequent_validity() {
    let frames = binary_frames(3);
    for axiom in Axiom::ALL {
        let seq = axiom.sequent();
        let bad: Vec<_> = frames
            .par_iter()
            .filter(|f| validate(&f.dual(), &seq).unwrap() != fo_binary(axiom, f))
            .map(|f| f.pairs())
            .collect();
        assert!(
            bad.is_empty(),
            "{axiom}: {} disagreements, e.g. {:?}",
            bad.len(),
            bad.first()
        );
    }
}

#[test]
fn ternary_conditions_match_sequent_validity() {
    let frames = ternary_frames(2);
    for axiom in Axiom::ALL {
        let seq = axiom.sequent();
        let bad: Vec<_> = frames
            .par_iter()
            .filter(|f| validate(&f.dual(), &seq).unwrap() != fo_ternary(axiom, f))
            .map(|f| f.triples())
            .collect();
        assert!(
            bad.is_empty(),
            "{axiom}: {} disagreements, e.g. {:?}",
            bad.len(),
            bad.first()
        );
    }
}
