//! Iterative-deepening backward search.
//!
//! Axioms are tried first. Invertible rules are applied eagerly without
//! backtracking; a conjunction on the right is split by contracting the
//! whole antecedent first. The remaining rules branch: implications on the
//! left, product and disjunction on the right, synthesized rules, and
//! weakening of either side of a meet.
//!
//! A sequent that fails on a small algebra validating every added rule's
//! source has no derivation, so such sequents are pruned: the end sequent
//! against frames of up to three worlds, inner sequents against algebras
//! of at most four elements.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rules::{axiom_applies, backward, BaseRule, RuleName};
use super::{DerivationTree, Limits, RuleSet};
use crate::oracle::{catalog, enumerate_binary, enumerate_ternary, validate, Algebra};
use crate::syntax::{ConsecutionSequent, Formula, Inequality, Structure};

type Model = Box<dyn Algebra + Send + Sync>;

/// Models drawn from each family for pruning inside the search.
const PER_FAMILY: usize = 12;
/// Models drawn from each family for the check on the end sequent.
const PER_FAMILY_AT_ROOT: usize = 64;

/// Candidate pruning models grouped by family: the catalog, binary frames
/// on at most two worlds, ternary frames on two worlds, binary frames on
/// three worlds. The last two are shuffled with a fixed seed.
fn model_families() -> &'static [Vec<Model>] {
    static FAMILIES: OnceLock<Vec<Vec<Model>>> = OnceLock::new();
    FAMILIES.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let small_binary = (1..=2)
            .flat_map(|n| enumerate_binary(n).expect("small sizes enumerate"))
            .map(|f| Box::new(f.dual()) as Model)
            .collect();
        let mut ternary: Vec<Model> = enumerate_ternary(2)
            .expect("small sizes enumerate")
            .map(|f| Box::new(f.dual()) as Model)
            .collect();
        ternary.shuffle(&mut rng);
        let mut binary: Vec<Model> = enumerate_binary(3)
            .expect("small sizes enumerate")
            .map(|f| Box::new(f.dual()) as Model)
            .collect();
        binary.shuffle(&mut rng);
        vec![
            catalog()
                .into_iter()
                .map(|a| Box::new(a) as Model)
                .collect(),
            small_binary,
            ternary,
            binary,
        ]
    })
}

/// Models of the sources: a small set for inner sequents and a larger one
/// for the end sequent.
#[derive(Default)]
struct Models {
    inner: Vec<&'static Model>,
    root: Vec<&'static Model>,
}

/// Models validating every source, cached per source list.
fn pruning_models(sources: &[Inequality]) -> Arc<Models> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<Inequality>, Arc<Models>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(found) = cache.lock().expect("cache lock").get(sources) {
        return found.clone();
    }
    let mut models = Models::default();
    for (k, family) in model_families().iter().enumerate() {
        let valid: Vec<&'static Model> = family
            .iter()
            .filter(|m| sources.iter().all(|s| validate(&***m, s).unwrap_or(false)))
            .take(PER_FAMILY_AT_ROOT)
            .collect();
        if k < 3 {
            models.inner.extend(valid.iter().take(PER_FAMILY));
        }
        models.root.extend(valid);
    }
    let models = Arc::new(models);
    cache
        .lock()
        .expect("cache lock")
        .insert(sources.to_vec(), models.clone());
    models
}

fn refutes(models: &[&'static Model], s: &ConsecutionSequent) -> bool {
    let ineq = Inequality::new(s.antecedent.tau(), s.succedent.clone());
    models.iter().any(|m| validate(&***m, &ineq) == Ok(false))
}

/// Sequents refuted by a model of the rule sources.
struct Pruner {
    models: Arc<Models>,
    verdicts: HashMap<ConsecutionSequent, bool>,
}

impl Pruner {
    fn new(rules: &RuleSet, enabled: bool) -> Pruner {
        let models = if enabled {
            pruning_models(&rules.sources())
        } else {
            Arc::new(Models::default())
        };
        Pruner {
            models,
            verdicts: HashMap::new(),
        }
    }

    fn refuted_root(&self, s: &ConsecutionSequent) -> bool {
        refutes(&self.models.root, s)
    }

    fn refuted(&mut self, s: &ConsecutionSequent) -> bool {
        if self.models.inner.is_empty() {
            return false;
        }
        if let Some(&v) = self.verdicts.get(s) {
            return v;
        }
        let v = refutes(&self.models.inner, s);
        self.verdicts.insert(s.clone(), v);
        v
    }
}

/// One backward step: unary steps leading from the goal to the sequent the
/// final rule is applied to, then the final rule and its premises.
struct Move {
    chain: Vec<(RuleName, ConsecutionSequent)>,
    rule: RuleName,
    conclusion: ConsecutionSequent,
    premises: Vec<ConsecutionSequent>,
}

impl Move {
    fn single(
        rule: BaseRule,
        conclusion: &ConsecutionSequent,
        premises: Vec<ConsecutionSequent>,
    ) -> Move {
        Move {
            chain: Vec::new(),
            rule: RuleName::Base(rule),
            conclusion: conclusion.clone(),
            premises,
        }
    }

    fn build(&self, subproofs: Vec<DerivationTree>) -> DerivationTree {
        let mut tree = DerivationTree::new(self.conclusion.clone(), self.rule.clone(), subproofs);
        for (rule, conclusion) in self.chain.iter().rev() {
            tree = DerivationTree::new(conclusion.clone(), rule.clone(), vec![tree]);
        }
        tree
    }
}

pub(super) struct Search<'a> {
    rules: &'a RuleSet,
    depth: usize,
    cap: usize,
    deadline: Option<Instant>,
    /// Largest remaining depth at which each sequent has failed.
    failed: HashMap<ConsecutionSequent, usize>,
    branch: HashSet<ConsecutionSequent>,
    pruner: Pruner,
    expired: bool,
}

const EAGER: [BaseRule; 5] = [
    BaseRule::AndL,
    BaseRule::OrL,
    BaseRule::ProdL,
    BaseRule::ImpR,
    BaseRule::LImpR,
];

impl<'a> Search<'a> {
    pub(super) fn new(
        rules: &'a RuleSet,
        limits: &Limits,
        goal: &ConsecutionSequent,
    ) -> Search<'a> {
        Search {
            rules,
            depth: limits.depth,
            cap: limits.max_size.unwrap_or(4 * goal.size()),
            deadline: limits.deadline,
            failed: HashMap::new(),
            branch: HashSet::new(),
            pruner: Pruner::new(rules, limits.prune),
            expired: false,
        }
    }

    pub(super) fn run(&mut self, goal: &ConsecutionSequent) -> Option<DerivationTree> {
        if self.pruner.refuted_root(goal) {
            return None;
        }
        for depth in 1..=self.depth {
            if let Some(d) = self.prove(goal, depth) {
                return Some(d);
            }
            if self.expired {
                return None;
            }
        }
        None
    }

    fn prove(&mut self, s: &ConsecutionSequent, depth: usize) -> Option<DerivationTree> {
        for rule in [BaseRule::Id, BaseRule::Top, BaseRule::Bot] {
            if axiom_applies(rule, s) {
                return Some(DerivationTree::new(
                    s.clone(),
                    RuleName::Base(rule),
                    Vec::new(),
                ));
            }
        }
        if depth == 0 || self.expired || self.branch.contains(s) {
            return None;
        }
        if self.failed.get(s).is_some_and(|&d| d >= depth) || self.pruner.refuted(s) {
            return None;
        }
        if self.deadline.is_some_and(|t| Instant::now() >= t) {
            self.expired = true;
            return None;
        }
        self.branch.insert(s.clone());
        let found = self.expand(s, depth);
        self.branch.remove(s);
        if found.is_none() {
            let entry = self.failed.entry(s.clone()).or_insert(0);
            *entry = (*entry).max(depth);
        }
        found
    }

    fn expand(&mut self, s: &ConsecutionSequent, depth: usize) -> Option<DerivationTree> {
        if let Some(m) = eager_move(s) {
            return self.attempt(&m, depth);
        }
        for m in self.branching_moves(s) {
            if let Some(d) = self.attempt(&m, depth) {
                return Some(d);
            }
            if self.expired {
                return None;
            }
        }
        None
    }

    fn attempt(&mut self, m: &Move, depth: usize) -> Option<DerivationTree> {
        if m.premises.iter().any(|p| p.size() > self.cap) {
            return None;
        }
        let mut subproofs = Vec::with_capacity(m.premises.len());
        for p in &m.premises {
            subproofs.push(self.prove(p, depth - 1)?);
        }
        Some(m.build(subproofs))
    }

    fn branching_moves(&self, s: &ConsecutionSequent) -> Vec<Move> {
        let mut out = Vec::new();
        for rule in [
            BaseRule::ImpL,
            BaseRule::LImpL,
            BaseRule::ProdR,
            BaseRule::OrR1,
            BaseRule::OrR2,
        ] {
            out.extend(
                backward(rule, s)
                    .into_iter()
                    .map(|ps| Move::single(rule, s, ps)),
            );
        }
        for rule in &self.rules.structural {
            for premise in rule.backward(&s.antecedent) {
                out.push(Move {
                    chain: Vec::new(),
                    rule: RuleName::Structural(rule.name.clone()),
                    conclusion: s.clone(),
                    premises: vec![ConsecutionSequent::new(premise, s.succedent.clone())],
                });
            }
        }
        out.extend(weakenings(s));
        out
    }
}

/// The first invertible step that applies, if any.
fn eager_move(s: &ConsecutionSequent) -> Option<Move> {
    for rule in EAGER {
        if let Some(ps) = backward(rule, s).into_iter().next() {
            return Some(Move::single(rule, s, ps));
        }
    }
    if let Formula::And(a, b) = &s.succedent {
        let doubled = ConsecutionSequent::new(
            Structure::meet(s.antecedent.clone(), s.antecedent.clone()),
            s.succedent.clone(),
        );
        return Some(Move {
            chain: vec![(RuleName::Base(BaseRule::Contract), s.clone())],
            rule: RuleName::Base(BaseRule::AndR),
            conclusion: doubled,
            premises: vec![
                ConsecutionSequent::new(s.antecedent.clone(), a.as_ref().clone()),
                ConsecutionSequent::new(s.antecedent.clone(), b.as_ref().clone()),
            ],
        });
    }
    None
}

/// Drop either side of some meet: the left side directly, the right side
/// after an exchange.
fn weakenings(s: &ConsecutionSequent) -> Vec<Move> {
    let mut out = Vec::new();
    for path in s.antecedent.positions() {
        let Some(Structure::Meet(a, b)) = s.antecedent.at_path(&path) else {
            continue;
        };
        let with = |by: Structure| {
            ConsecutionSequent::new(
                s.antecedent.replace_at(&path, by).expect("position exists"),
                s.succedent.clone(),
            )
        };
        out.push(Move::single(
            BaseRule::Weaken,
            s,
            vec![with(b.as_ref().clone())],
        ));
        let swapped = with(Structure::meet(b.as_ref().clone(), a.as_ref().clone()));
        out.push(Move {
            chain: vec![(RuleName::Base(BaseRule::Exchange), s.clone())],
            rule: RuleName::Base(BaseRule::Weaken),
            conclusion: swapped,
            premises: vec![with(a.as_ref().clone())],
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, prove};
    use super::*;
    use crate::syntax::parse_consecution;

    fn cs(text: &str) -> ConsecutionSequent {
        parse_consecution(text).unwrap()
    }

    fn proves(text: &str, rules: &RuleSet) -> Option<DerivationTree> {
        let d = prove(&cs(text), rules, &Limits::default()).unwrap()?;
        assert_eq!(check_proof(&d, rules), Ok(()), "{}", d.render());
        Some(d)
    }

    #[test]
    fn conjunction_on_the_right_contracts_first() {
        let d = proves("p & q |- q & p", &RuleSet::bdfnl()).unwrap();
        assert_eq!(d.premises[0].rule, RuleName::Base(BaseRule::Contract));
    }

    #[test]
    fn weakening_reaches_either_side() {
        assert!(proves("(p ^ q) ^ r |- q", &RuleSet::bdfnl()).is_some());
        assert!(proves("p ^ (q ^ r) |- q", &RuleSet::bdfnl()).is_some());
        assert!(proves("p ^ q |- r", &RuleSet::bdfnl()).is_none());
    }

    #[test]
    fn synthesized_rules_are_used() {
        let rwh = RuleSet::system("rwh").unwrap();
        assert!(proves("p o q |- p", &rwh).is_some());
        assert!(proves("p o q |- p", &RuleSet::bdfnl()).is_none());
    }

    #[test]
    fn deadlines_stop_the_search() {
        let limits = Limits {
            deadline: Some(Instant::now()),
            ..Limits::default()
        };
        let rwh = RuleSet::system("rwh").unwrap();
        assert!(prove(&cs("p o q |- r"), &rwh, &limits).unwrap().is_none());
    }
}
