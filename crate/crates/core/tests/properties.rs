use proptest::prelude::*;
use strictimp::classify::{
    build_signed_tree, find_certificate, is_inductive, InductiveCertificate, NodeLabel, Sign,
    SignedTree,
};
use strictimp::oracle::{
    catalog, check_laws, enumerate_binary, evaluate, sample_ternary, Algebra, Assignment,
};
use strictimp::syntax::{
    parse_formula, parse_structure, Formula, Inequality, Language, Name, Polarity, Structure,
};

type Alg = Box<dyn Algebra + Send + Sync>;

fn formula_over(leaf: BoxedStrategy<Formula>, connectives: Vec<u8>) -> BoxedStrategy<Formula> {
    leaf.prop_recursive(4, 24, 2, move |inner| {
        (
            prop::sample::select(connectives.clone()),
            inner.clone(),
            inner,
        )
            .prop_map(|(c, a, b)| match c {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                2 => Formula::imp(a, b),
                3 => Formula::limp(a, b),
                _ => Formula::prod(a, b),
            })
    })
    .boxed()
}

fn var_leaf() -> BoxedStrategy<Formula> {
    prop_oneof![
        6 => prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::var),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ]
    .boxed()
}

fn any_leaf() -> BoxedStrategy<Formula> {
    prop_oneof![
        6 => var_leaf(),
        1 => prop::sample::select(vec!["i", "j"]).prop_map(Formula::nominal),
        1 => prop::sample::select(vec!["m", "n"]).prop_map(Formula::conominal),
    ]
    .boxed()
}

/// Formulas with nominals and conominals over every connective.
fn any_formula() -> BoxedStrategy<Formula> {
    formula_over(any_leaf(), vec![0, 1, 2, 3, 4])
}

/// Pure formulas over every connective.
fn lc_formula() -> BoxedStrategy<Formula> {
    formula_over(var_leaf(), vec![0, 1, 2, 3, 4])
}

/// Pure formulas over conjunction, disjunction and strict implication.
fn si_formula() -> BoxedStrategy<Formula> {
    formula_over(var_leaf(), vec![0, 1, 2])
}

fn structure() -> impl Strategy<Value = Structure> {
    lc_formula()
        .prop_map(Structure::leaf)
        .prop_recursive(3, 12, 2, |inner| {
            (any::<bool>(), inner.clone(), inner).prop_map(|(prod, a, b)| {
                if prod {
                    Structure::prod(a, b)
                } else {
                    Structure::meet(a, b)
                }
            })
        })
}

fn small_algebras() -> Vec<Alg> {
    let mut out: Vec<Alg> = catalog().into_iter().map(|a| Box::new(a) as Alg).collect();
    out.extend(
        enumerate_binary(2)
            .unwrap()
            .map(|f| Box::new(f.dual()) as Alg),
    );
    out
}

fn signs_are_coherent(t: &SignedTree) -> bool {
    t.children.iter().enumerate().all(|(k, c)| {
        let expected = if t.label == NodeLabel::Imp && k == 0 {
            t.sign.flip()
        } else {
            t.sign
        };
        c.sign == expected && signs_are_coherent(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn formulas_round_trip(f in any_formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text, Language::LambekCalculusPlus).unwrap(), f);
    }

    #[test]
    fn structures_round_trip(s in structure()) {
        prop_assert_eq!(parse_structure(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn tau_is_a_homomorphism(a in structure(), b in structure()) {
        prop_assert_eq!(Structure::prod(a.clone(), b.clone()).tau(), Formula::prod(a.tau(), b.tau()));
        prop_assert_eq!(Structure::meet(a.clone(), b.clone()).tau(), Formula::and(a.tau(), b.tau()));
    }

    #[test]
    fn signs_flip_only_under_implication_antecedents(f in si_formula(), plus in any::<bool>()) {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let tree = build_signed_tree(&f, sign).unwrap();
        prop_assert_eq!(tree.sign, sign);
        prop_assert!(signs_are_coherent(&tree));
        let positive = tree.var_leaves().iter().filter(|(v, s)| *v == "p" && *s == sign).count();
        let negative = tree.var_leaves().iter().filter(|(v, s)| *v == "p" && *s != sign).count();
        let expected = match (positive, negative) {
            (0, 0) => Polarity::Absent,
            (_, 0) => Polarity::Positive,
            (0, _) => Polarity::Negative,
            _ => Polarity::Both,
        };
        prop_assert_eq!(f.polarity("p"), expected);
    }

    #[test]
    fn polarity_predicts_monotonicity(f in lc_formula(), x in 0usize..16, y in 0usize..16, rest in 0usize..256) {
        let polarity = f.polarity("p");
        prop_assume!(polarity == Polarity::Positive || polarity == Polarity::Negative);
        for alg in small_algebras() {
            let els = alg.elements();
            let (a, b) = (els[x % els.len()], els[y % els.len()]);
            let (small, large) = match (alg.leq(a, b), alg.leq(b, a)) {
                (true, _) => (a, b),
                (_, true) => (b, a),
                _ => continue,
            };
            let mut base = Assignment::default();
            base.vars.insert(Name::from("q"), els[rest % els.len()]);
            base.vars.insert(Name::from("r"), els[(rest / 16) % els.len()]);
            let value = |v: u64| {
                let mut asg = base.clone();
                asg.vars.insert(Name::from("p"), v);
                evaluate(alg.as_ref(), &f, &asg).unwrap()
            };
            let (lo, hi) = (value(small), value(large));
            if polarity == Polarity::Positive {
                prop_assert!(alg.leq(lo, hi), "{} on {}", f, alg.name());
            } else {
                prop_assert!(alg.leq(hi, lo), "{} on {}", f, alg.name());
            }
        }
    }

    #[test]
    fn certificates_survive_larger_orders(
        l in si_formula(),
        r in si_formula(),
        extra in prop::collection::vec((0usize..3, 0usize..3), 1..3),
    ) {
        let ineq = Inequality::new(l, r);
        if let Some(cert) = find_certificate(&ineq).unwrap() {
            prop_assert!(is_inductive(&ineq, &cert).unwrap());
            let vars: Vec<Name> = cert.epsilon.keys().cloned().collect();
            prop_assume!(!vars.is_empty());
            let mut pairs: Vec<(Name, Name)> = cert.omega.iter().cloned().collect();
            pairs.extend(extra.iter().map(|&(a, b)| (vars[a % vars.len()].clone(), vars[b % vars.len()].clone())));
            if let Ok(bigger) = InductiveCertificate::new(cert.epsilon.clone(), pairs) {
                prop_assert!(is_inductive(&ineq, &bigger).unwrap(), "{} with {}", ineq, bigger);
            }
        }
    }

    #[test]
    fn ternary_duals_are_lawful(seed in any::<u64>()) {
        for frame in sample_ternary(3, 4, seed).unwrap() {
            prop_assert_eq!(check_laws(&frame.dual()), Ok(()));
        }
    }
}
