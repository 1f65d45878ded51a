use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strictimp::axioms::Axiom;
use strictimp::oracle::{catalog, enumerate_binary, enumerate_ternary, validate, Algebra};
use strictimp::prover::sample::random_structure;
use strictimp::syntax::{parse_inequality, Inequality, Language, Structure};
use strictimp::synth::{synthesize_rule, StructuralRule};

type Alg = Box<dyn Algebra + Send + Sync>;

fn algebras() -> Vec<Alg> {
    let mut out: Vec<Alg> = catalog().into_iter().map(|a| Box::new(a) as Alg).collect();
    out.extend(
        enumerate_binary(2)
            .unwrap()
            .map(|f| Box::new(f.dual()) as Alg),
    );
    out.extend(
        enumerate_ternary(2)
            .unwrap()
            .map(|f| Box::new(f.dual()) as Alg),
    );
    out
}

fn rules() -> Vec<StructuralRule> {
    Axiom::ALL
        .into_iter()
        .filter_map(|a| a.correspondent_text())
        .map(|(name, _)| StructuralRule::named(name).unwrap())
        .collect()
}

/// Pairs `(conclusion, premise)` of rule applications inside random structures.
fn instances(rule: &StructuralRule, seed: u64) -> Vec<(Structure, Structure)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..600 {
        let s = random_structure(&mut rng, 2 + k % 4, 3);
        for premise in rule.backward(&s) {
            out.push((s.clone(), premise));
        }
    }
    out
}

#[test]
fn rule_applications_are_sound_where_the_source_holds() {
    let algebras = algebras();
    for (k, rule) in rules().iter().enumerate() {
        let models: Vec<&Alg> = algebras
            .iter()
            .filter(|a| validate(a.as_ref(), &rule.source).unwrap())
            .collect();
        assert!(!models.is_empty(), "{}", rule.name);
        let cases = instances(rule, k as u64);
        assert!(
            cases.len() >= 20,
            "{}: {} applications",
            rule.name,
            cases.len()
        );
        for (conclusion, premise) in &cases {
            assert!(
                rule.relates(conclusion, premise),
                "{}: {conclusion} from {premise}",
                rule.name
            );
            let step = Inequality::new(conclusion.tau(), premise.tau());
            for alg in &models {
                assert!(
                    validate(alg.as_ref(), &step).unwrap(),
                    "{}: {step} on {}",
                    rule.name,
                    alg.name()
                );
            }
        }
    }
}

#[test]
fn rule_applications_fail_where_the_source_fails() {
    let algebras = algebras();
    for (k, rule) in rules().iter().enumerate() {
        let Some(bad) = algebras
            .iter()
            .find(|a| !validate(a.as_ref(), &rule.source).unwrap())
        else {
            continue;
        };
        let refuted = instances(rule, k as u64)
            .iter()
            .any(|(c, p)| !validate(bad.as_ref(), &Inequality::new(c.tau(), p.tau())).unwrap());
        assert!(refuted, "{} is never refuted on {}", rule.name, bad.name());
    }
}

#[test]
fn non_product_sources_are_rejected() {
    let sigma = parse_inequality("p & q |- p", Language::LambekCalculusPlus).unwrap();
    assert!(synthesize_rule("bad", &sigma).is_err());
}
