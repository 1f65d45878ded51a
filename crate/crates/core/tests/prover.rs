use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use strictimp::axioms::Axiom;
use strictimp::oracle::{validate, Algebra};
use strictimp::prover::sample::{
    mix_obligations, provable_sequents, random_formula_up_to, random_structure,
};
use strictimp::prover::{
    check_proof, decide, prove, prove_with_mix, refutation_algebras, subformula_violation,
    translate_and_prove, BaseRule, DerivationTree, Limits, Outcome, RuleName, RuleSet,
};
use strictimp::syntax::{
    parse_consecution, parse_inequality, ConsecutionSequent, Context, Formula, Inequality,
    Language, Structure,
};

type Alg = Box<dyn Algebra + Send + Sync>;

fn cs(text: &str) -> ConsecutionSequent {
    parse_consecution(text).unwrap()
}

fn lc(text: &str) -> Inequality {
    parse_inequality(text, Language::LambekCalculusPlus).unwrap()
}

fn node(c: &str, rule: BaseRule, premises: Vec<DerivationTree>) -> DerivationTree {
    DerivationTree::new(cs(c), RuleName::Base(rule), premises)
}

fn id(c: &str) -> DerivationTree {
    node(c, BaseRule::Id, vec![])
}

/// The system whose added rule is the correspondent of `axiom`.
fn home_system(axiom: Axiom) -> Option<&'static str> {
    Some(match axiom {
        Axiom::I => "rwh",
        Axiom::Tr => "rwh",
        Axiom::MP => "rt",
        Axiom::W => "rw",
        Axiom::RT => "rrt",
        Axiom::B => "rb",
        Axiom::BPrime => "rb'",
        Axiom::C => "rc",
        Axiom::Fr => "rfr",
        Axiom::WPrime => "rw'",
        Axiom::Sym | Axiom::Euc | Axiom::D => return None,
    })
}

#[test]
fn transcribed_distributivity_derivation_checks() {
    let goal = "(p & q) | (p & r)";
    let left = node(
        &format!("p ^ q |- {goal}"),
        BaseRule::OrR1,
        vec![node(
            "p ^ q |- p & q",
            BaseRule::AndR,
            vec![id("p |- p"), id("q |- q")],
        )],
    );
    let right = node(
        &format!("p ^ r |- {goal}"),
        BaseRule::OrR2,
        vec![node(
            "p ^ r |- p & r",
            BaseRule::AndR,
            vec![id("p |- p"), id("r |- r")],
        )],
    );
    let d = node(
        &format!("p & (q | r) |- {goal}"),
        BaseRule::AndL,
        vec![node(
            &format!("p ^ (q | r) |- {goal}"),
            BaseRule::OrL,
            vec![left, right],
        )],
    );
    assert_eq!(check_proof(&d, &RuleSet::bdfnl()), Ok(()));
}

#[test]
fn distributivity_is_proved() {
    for text in [
        "p & (q | r) |- (p & q) | (p & r)",
        "(p & q) | (p & r) |- p & (q | r)",
        "(p | q) & (p | r) |- p | (q & r)",
        "p | (q & r) |- (p | q) & (p | r)",
    ] {
        let d = translate_and_prove(&lc(text), &RuleSet::bdfnl(), &Limits::default())
            .unwrap()
            .unwrap_or_else(|| panic!("{text}"));
        assert_eq!(check_proof(&d, &RuleSet::bdfnl()), Ok(()), "{text}");
    }
}

#[test]
fn axiom_families_are_proved() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rules = RuleSet::bdfnl();
    for _ in 0..50 {
        let phi = random_formula_up_to(&mut rng, 7);
        let gamma = random_structure(&mut rng, 3, 3);
        let leaves: Vec<Vec<bool>> = gamma
            .positions()
            .into_iter()
            .filter(|p| matches!(gamma.at_path(p), Some(Structure::Leaf(_))))
            .collect();
        let hole = leaves.choose(&mut rng).unwrap();
        let with_bot = gamma
            .replace_at(hole, Structure::leaf(Formula::Bot))
            .unwrap();
        for (s, rule) in [
            (
                ConsecutionSequent::new(Structure::leaf(phi.clone()), phi.clone()),
                BaseRule::Id,
            ),
            (
                ConsecutionSequent::new(gamma.clone(), Formula::Top),
                BaseRule::Top,
            ),
            (
                ConsecutionSequent::new(with_bot, phi.clone()),
                BaseRule::Bot,
            ),
        ] {
            let d = prove(&s, &rules, &Limits::default())
                .unwrap()
                .unwrap_or_else(|| panic!("{s}"));
            assert_eq!(d.rule, RuleName::Base(rule), "{s}");
            assert_eq!(check_proof(&d, &rules), Ok(()));
        }
    }
}

#[test]
fn identity_and_transitivity_hold_with_their_rules() {
    let rwh = RuleSet::system("rwh").unwrap();
    for axiom in [Axiom::I, Axiom::Tr] {
        let d = translate_and_prove(&axiom.sequent(), &rwh, &Limits::default())
            .unwrap()
            .unwrap_or_else(|| panic!("{axiom}"));
        assert_eq!(check_proof(&d, &rwh), Ok(()));
        assert!(d.height() <= 40);
    }
}

#[test]
fn every_correspondent_axiom_is_proved_in_its_system_only() {
    for axiom in Axiom::ALL {
        let Some(system) = home_system(axiom) else {
            continue;
        };
        let rules = RuleSet::system(system).unwrap();
        let d = translate_and_prove(&axiom.sequent(), &rules, &Limits::default())
            .unwrap()
            .unwrap_or_else(|| panic!("{axiom} in {system}"));
        assert_eq!(check_proof(&d, &rules), Ok(()), "{axiom}");
        let goal =
            ConsecutionSequent::new(Structure::leaf(axiom.sequent().lhs), axiom.sequent().rhs);
        assert!(
            matches!(
                decide(&goal, &RuleSet::bdfnl(), &Limits::default()).unwrap(),
                Outcome::Refuted { .. }
            ),
            "{axiom} in the base calculus"
        );
    }
}

#[test]
fn left_projection_is_refuted_in_the_base_calculus() {
    let s = cs("p * q |- p");
    assert!(matches!(
        decide(&s, &RuleSet::bdfnl(), &Limits::default()).unwrap(),
        Outcome::Refuted { .. }
    ));
    let rwh = RuleSet::system("rwh").unwrap();
    let Outcome::Proved(d) = decide(&s, &rwh, &Limits::default()).unwrap() else {
        panic!("not proved with weakening");
    };
    assert!(d.uses(&RuleName::Structural("wl".into())));
}

#[test]
fn proofs_are_sound() {
    let algebras: Vec<Alg> = refutation_algebras();
    let mut checked = 0;
    for name in RuleSet::system_names() {
        let rules = RuleSet::system(name).unwrap();
        let models: Vec<&Alg> = algebras
            .iter()
            .filter(|a| {
                rules
                    .sources()
                    .iter()
                    .all(|s| validate(a.as_ref(), s).unwrap())
            })
            .collect();
        let mut corpus = provable_sequents(&rules, &Limits::default(), 6, 6, 2000, 17);
        for axiom in Axiom::ALL {
            let limits = Limits {
                deadline: Some(Instant::now() + Duration::from_millis(500)),
                ..Limits::default()
            };
            if let Ok(Some(d)) = translate_and_prove(&axiom.sequent(), &rules, &limits) {
                corpus.push((axiom.sequent(), d));
            }
        }
        for (ineq, d) in &corpus {
            assert_eq!(check_proof(d, &rules), Ok(()), "{name}: {ineq}");
            let bad = models
                .par_iter()
                .find_any(|a| !validate(a.as_ref(), ineq).unwrap());
            assert!(
                bad.is_none(),
                "{name}: {ineq} fails on {}",
                bad.unwrap().name()
            );
        }
        checked += corpus.len();
    }
    assert!(checked >= 50, "only {checked} proved sequents");
}

#[test]
fn derivations_have_the_subformula_property() {
    for name in RuleSet::system_names() {
        let rules = RuleSet::system(name).unwrap();
        assert!(rules.preserves_subformula(), "{name}");
        for (ineq, d) in provable_sequents(&rules, &Limits::default(), 6, 20, 2000, 23) {
            assert_eq!(subformula_violation(&d), None, "{name}: {ineq}");
        }
    }
}

#[test]
fn structures_and_their_formula_readings_agree() {
    let rules = RuleSet::bdfnl();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut cases: Vec<ConsecutionSequent> = provable_sequents(&rules, &limits, 6, 30, 2000, 31)
        .iter()
        .flat_map(|(_, d)| d.sequents().into_iter().cloned().collect::<Vec<_>>())
        .filter(|s| !matches!(s.antecedent, Structure::Leaf(_)))
        .collect();
    for _ in 0..100 {
        cases.push(ConsecutionSequent::new(
            random_structure(&mut rng, 3, 3),
            random_formula_up_to(&mut rng, 5),
        ));
    }
    assert!(cases.len() >= 100);
    for s in &cases {
        let formula =
            ConsecutionSequent::new(Structure::leaf(s.antecedent.tau()), s.succedent.clone());
        let a = prove(s, &rules, &limits).unwrap().is_some();
        let b = prove(&formula, &rules, &limits).unwrap().is_some();
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn mix_is_admissible_on_sampled_pairs() {
    let rules = RuleSet::bdfnl().with_mix();
    let obligations = mix_obligations(&rules, 100, 5);
    assert_eq!(obligations.len(), 100);
    let mut unknown = 0;
    for o in &obligations {
        let mixed = prove_with_mix(
            &o.left,
            &o.context,
            &o.right.succedent,
            &rules,
            &Limits::default(),
        )
        .unwrap()
        .expect("premises are provable");
        assert_eq!(mixed.conclusion, o.conclusion);
        assert_eq!(check_proof(&mixed, &rules), Ok(()));
        let direct = prove(
            &o.conclusion,
            &rules,
            &Limits::with_depth(2 * o.premise_height),
        )
        .unwrap();
        match direct {
            Some(d) => assert!(!d.uses(&RuleName::Mix)),
            None => unknown += 1,
        }
    }
    assert!(unknown <= 5, "{unknown} mixed conclusions not proved");
}

#[test]
fn degenerate_mixes() {
    let rules = RuleSet::bdfnl().with_mix();
    let q = cs("q |- q");
    let ctx = Context::Hole;
    let d = prove_with_mix(&q, &ctx, &q.succedent, &rules, &Limits::default())
        .unwrap()
        .unwrap();
    assert_eq!(d.conclusion, q);
    assert_eq!(check_proof(&d, &rules), Ok(()));
    assert!(check_proof(&d, &RuleSet::bdfnl()).is_err());
    assert!(prove_with_mix(
        &q,
        &ctx,
        &q.succedent,
        &RuleSet::bdfnl(),
        &Limits::default()
    )
    .is_err());
}
