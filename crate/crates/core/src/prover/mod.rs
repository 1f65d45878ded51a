//! Cut-free backward proof search and derivation checking for the
//! distributive non-associative Lambek calculus with meet structures, and
//! its extensions by synthesized structural rules.

mod rules;
pub mod sample;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::{catalog, enumerate_binary, enumerate_ternary, validate, Algebra};
use crate::syntax::{
    parse_consecution, ConsecutionSequent, Context, Formula, Inequality, Language, Structure,
    SyntaxError,
};
use crate::synth::StructuralRule;

pub use rules::{axiom_applies, backward, mix_relates, BaseRule, RuleName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("invalid search limits: {0}")]
    BadLimits(String),
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
    #[error("the mix rule is not enabled in this rule set")]
    MixDisabled,
    #[error("`{0}` is outside the Lambek calculus language")]
    Language(String),
}

/// The fixed rules plus synthesized structural rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    pub name: String,
    pub structural: Vec<StructuralRule>,
    pub mix_enabled: bool,
}

/// Extensions by synthesized rules, named by their correspondents.
const SYSTEMS: [(&str, &[&str]); 15] = [
    ("bdfnl", &[]),
    ("rwh", &["wl", "tr"]),
    ("rt", &["ct"]),
    ("rw", &["wr"]),
    ("rrt", &["rt"]),
    ("rb", &["b"]),
    ("rb'", &["b'"]),
    ("rc", &["c"]),
    ("rfr", &["fr"]),
    ("rw'", &["w'"]),
    ("rbca", &["ct", "wr"]),
    ("rkt", &["wl", "tr", "ct"]),
    ("rk4", &["wl", "tr", "rt"]),
    ("rs4", &["wl", "tr", "ct", "rt"]),
    ("rkw", &["wl", "tr", "wr"]),
];

impl RuleSet {
    /// The base calculus with no extra rules.
    pub fn bdfnl() -> RuleSet {
        RuleSet::new("bdfnl", Vec::new())
    }

    pub fn new(name: &str, structural: Vec<StructuralRule>) -> RuleSet {
        RuleSet {
            name: name.to_string(),
            structural,
            mix_enabled: false,
        }
    }

    /// Names accepted by [`RuleSet::system`].
    pub fn system_names() -> impl Iterator<Item = &'static str> {
        SYSTEMS.iter().map(|(n, _)| *n)
    }

    pub fn system(name: &str) -> Result<RuleSet, ProverError> {
        let (_, extra) = SYSTEMS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| ProverError::UnknownSystem(name.to_string()))?;
        let rules = extra
            .iter()
            .map(|r| StructuralRule::named(r).expect("built-in correspondents synthesize"))
            .collect();
        Ok(RuleSet::new(name, rules))
    }

    pub fn with_mix(mut self) -> RuleSet {
        self.mix_enabled = true;
        self
    }

    /// The product-language sequents the added rules come from.
    pub fn sources(&self) -> Vec<Inequality> {
        self.structural.iter().map(|r| r.source.clone()).collect()
    }

    pub fn rule(&self, name: &str) -> Option<&StructuralRule> {
        self.structural.iter().find(|r| r.name == name)
    }

    /// Whether every added rule keeps the subformula property.
    pub fn preserves_subformula(&self) -> bool {
        self.structural
            .iter()
            .all(StructuralRule::preserves_subformula)
    }
}

/// Bounds on backward search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum height of the derivation.
    pub depth: usize,
    /// Largest sequent explored; `None` means four times the end sequent.
    pub max_size: Option<usize>,
    /// Give up (reporting no proof) once this instant passes.
    pub deadline: Option<Instant>,
    /// Skip sequents refuted by small models of the added rules' sources.
    pub prune: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            depth: 40,
            max_size: None,
            deadline: None,
            prune: true,
        }
    }
}

impl Limits {
    pub fn with_depth(depth: usize) -> Limits {
        Limits {
            depth,
            ..Limits::default()
        }
    }

    fn validate(&self) -> Result<(), ProverError> {
        if self.depth == 0 {
            return Err(ProverError::BadLimits("depth must be positive".into()));
        }
        if self.max_size == Some(0) {
            return Err(ProverError::BadLimits(
                "maximum size must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A derivation: the conclusion, the rule applied, and its premises'
/// derivations in display order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub conclusion: ConsecutionSequent,
    pub rule: RuleName,
    pub premises: Vec<DerivationTree>,
}

impl DerivationTree {
    pub fn new(
        conclusion: ConsecutionSequent,
        rule: RuleName,
        premises: Vec<DerivationTree>,
    ) -> Self {
        DerivationTree {
            conclusion,
            rule,
            premises,
        }
    }

    /// Number of rule applications on the longest branch.
    pub fn height(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(DerivationTree::height)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(DerivationTree::node_count)
            .sum::<usize>()
    }

    /// Every sequent in the tree, pre-order.
    pub fn sequents(&self) -> Vec<&ConsecutionSequent> {
        let mut out = vec![&self.conclusion];
        for p in &self.premises {
            out.extend(p.sequents());
        }
        out
    }

    /// Whether the rule is used anywhere in the tree.
    pub fn uses(&self, rule: &RuleName) -> bool {
        self.rule == *rule || self.premises.iter().any(|p| p.uses(rule))
    }

    /// Indented rendering, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        out.push_str(&format!(
            "{:indent$}{}   [{}]\n",
            "",
            self.conclusion,
            self.rule,
            indent = indent
        ));
        for p in &self.premises {
            p.render_into(indent + 2, out);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TreeFile {
    conclusion: String,
    rule: String,
    premises: Vec<TreeFile>,
}

impl From<&DerivationTree> for TreeFile {
    fn from(d: &DerivationTree) -> Self {
        TreeFile {
            conclusion: d.conclusion.to_string(),
            rule: d.rule.to_string(),
            premises: d.premises.iter().map(TreeFile::from).collect(),
        }
    }
}

impl TryFrom<TreeFile> for DerivationTree {
    type Error = String;

    fn try_from(f: TreeFile) -> Result<Self, String> {
        Ok(DerivationTree {
            conclusion: parse_consecution(&f.conclusion).map_err(|e: SyntaxError| e.to_string())?,
            rule: f
                .rule
                .parse()
                .map_err(|e: rules::EmptyRuleName| e.to_string())?,
            premises: f
                .premises
                .into_iter()
                .map(DerivationTree::try_from)
                .collect::<Result<_, _>>()?,
        })
    }
}

impl Serialize for DerivationTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TreeFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DerivationTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let file = TreeFile::deserialize(d)?;
        DerivationTree::try_from(file).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A node that is not a legal rule instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {path:?} ({rule}): {reason}")]
pub struct ProofError {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: String,
    pub reason: String,
}

/// Check that every node of `d` is an instance of its rule in `rules`.
pub fn check_proof(d: &DerivationTree, rules: &RuleSet) -> Result<(), ProofError> {
    check_node(d, rules, &mut Vec::new())
}

fn check_node(
    d: &DerivationTree,
    rules: &RuleSet,
    path: &mut Vec<usize>,
) -> Result<(), ProofError> {
    let fail = |reason: String| ProofError {
        path: path.clone(),
        rule: d.rule.to_string(),
        reason,
    };
    let premises: Vec<ConsecutionSequent> =
        d.premises.iter().map(|p| p.conclusion.clone()).collect();
    match &d.rule {
        RuleName::Base(rule) => {
            if !backward(*rule, &d.conclusion).contains(&premises) {
                return Err(fail(format!(
                    "not an instance with conclusion `{}`",
                    d.conclusion
                )));
            }
        }
        RuleName::Structural(name) => {
            let rule = rules
                .rule(name)
                .ok_or_else(|| fail(format!("`{name}` is not in {}", rules.name)))?;
            let ok = match premises.as_slice() {
                [p] => {
                    p.succedent == d.conclusion.succedent
                        && rule.relates(&d.conclusion.antecedent, &p.antecedent)
                }
                _ => false,
            };
            if !ok {
                return Err(fail(format!(
                    "not an instance with conclusion `{}`",
                    d.conclusion
                )));
            }
        }
        RuleName::Mix => {
            if !rules.mix_enabled {
                return Err(fail("mix is not enabled".into()));
            }
            if premises.len() != 2 || !mix_relates(&premises[0], &premises[1], &d.conclusion) {
                return Err(fail(format!(
                    "not a mix instance with conclusion `{}`",
                    d.conclusion
                )));
            }
        }
    }
    for (k, p) in d.premises.iter().enumerate() {
        path.push(k);
        check_node(p, rules, path)?;
        path.pop();
    }
    Ok(())
}

/// Search for a cut-free derivation of `s`.
pub fn prove(
    s: &ConsecutionSequent,
    rules: &RuleSet,
    limits: &Limits,
) -> Result<Option<DerivationTree>, ProverError> {
    limits.validate()?;
    Ok(search::Search::new(rules, limits, s).run(s))
}

/// Prove the formula sequent `lhs |- rhs`.
pub fn translate_and_prove(
    f: &Inequality,
    rules: &RuleSet,
    limits: &Limits,
) -> Result<Option<DerivationTree>, ProverError> {
    if !f.lhs.in_language(Language::LambekCalculusPlus)
        || !f.rhs.in_language(Language::LambekCalculusPlus)
    {
        return Err(ProverError::Language(f.to_string()));
    }
    prove(
        &ConsecutionSequent::new(Structure::leaf(f.lhs.clone()), f.rhs.clone()),
        rules,
        limits,
    )
}

/// Derive `G[Delta]...[Delta] |- psi` by one mix on cut-free derivations of
/// `Delta |- phi` and `G[phi]...[phi] |- psi`, where `left` is
/// `Delta |- phi` and `context` is `G` with a hole at every mixed position.
pub fn prove_with_mix(
    left: &ConsecutionSequent,
    context: &Context,
    succedent: &Formula,
    rules: &RuleSet,
    limits: &Limits,
) -> Result<Option<DerivationTree>, ProverError> {
    if !rules.mix_enabled {
        return Err(ProverError::MixDisabled);
    }
    let right = ConsecutionSequent::new(
        context.fill(&Structure::leaf(left.succedent.clone())),
        succedent.clone(),
    );
    let conclusion = ConsecutionSequent::new(context.fill(&left.antecedent), succedent.clone());
    let Some(l) = prove(left, rules, limits)? else {
        return Ok(None);
    };
    let Some(r) = prove(&right, rules, limits)? else {
        return Ok(None);
    };
    Ok(Some(DerivationTree::new(
        conclusion,
        RuleName::Mix,
        vec![l, r],
    )))
}

/// Formulas of the end sequent that are not closed under subformulas in
/// `d`: returns the first formula occurring in `d` that is not a subformula
/// of the end sequent.
pub fn subformula_violation(d: &DerivationTree) -> Option<Formula> {
    let end = &d.conclusion;
    let mut allowed: BTreeSet<Formula> = end.succedent.subformulas().into_iter().collect();
    for f in end.antecedent.leaves() {
        allowed.extend(f.subformulas());
    }
    d.sequents().into_iter().find_map(|s| {
        std::iter::once(&s.succedent)
            .chain(s.antecedent.leaves())
            .find(|f| !allowed.contains(*f))
            .cloned()
    })
}

/// Result of trying to settle a sequent.
#[derive(Clone, Debug)]
pub enum Outcome {
    Proved(DerivationTree),
    /// Invalid on the named algebra, which validates every added rule's source.
    Refuted {
        algebra: String,
    },
    Unknown,
}

/// Algebras used for refutation: the catalog and duals of small frames.
pub fn refutation_algebras() -> Vec<Box<dyn Algebra + Send + Sync>> {
    let mut out: Vec<Box<dyn Algebra + Send + Sync>> = catalog()
        .into_iter()
        .map(|a| Box::new(a) as Box<dyn Algebra + Send + Sync>)
        .collect();
    for n in 1..=3 {
        out.extend(
            enumerate_binary(n)
                .expect("small sizes enumerate")
                .map(|f| Box::new(f.dual()) as _),
        );
    }
    for n in 1..=2 {
        out.extend(
            enumerate_ternary(n)
                .expect("small sizes enumerate")
                .map(|f| Box::new(f.dual()) as _),
        );
    }
    out
}

/// The first algebra validating the rule sources on which `s` fails.
pub fn countermodel(
    s: &ConsecutionSequent,
    rules: &RuleSet,
    algebras: &[Box<dyn Algebra + Send + Sync>],
) -> Option<String> {
    let target = Inequality::new(s.antecedent.tau(), s.succedent.clone());
    let sources = rules.sources();
    algebras.iter().find_map(|a| {
        let models = sources
            .iter()
            .all(|src| validate(a.as_ref(), src).unwrap_or(false));
        (models && validate(a.as_ref(), &target) == Ok(false)).then(|| a.name())
    })
}

/// Prove `s`, and when that fails look for a counter-model.
pub fn decide(
    s: &ConsecutionSequent,
    rules: &RuleSet,
    limits: &Limits,
) -> Result<Outcome, ProverError> {
    if let Some(d) = prove(s, rules, limits)? {
        return Ok(Outcome::Proved(d));
    }
    Ok(match countermodel(s, rules, &refutation_algebras()) {
        Some(algebra) => Outcome::Refuted { algebra },
        None => Outcome::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(text: &str) -> ConsecutionSequent {
        parse_consecution(text).unwrap()
    }

    fn node(c: &str, rule: BaseRule, premises: Vec<DerivationTree>) -> DerivationTree {
        DerivationTree::new(cs(c), RuleName::Base(rule), premises)
    }

    #[test]
    fn systems_resolve() {
        for name in RuleSet::system_names() {
            RuleSet::system(name).unwrap();
        }
        assert_eq!(RuleSet::system("rs4").unwrap().structural.len(), 4);
        assert!(RuleSet::system("s5").is_err());
    }

    #[test]
    fn limits_must_be_positive() {
        let bad = Limits::with_depth(0);
        assert!(matches!(
            prove(&cs("p |- p"), &RuleSet::bdfnl(), &bad),
            Err(ProverError::BadLimits(_))
        ));
    }

    #[test]
    fn implication_right_checks_the_side() {
        let axioms = || {
            vec![
                node("p |- p", BaseRule::Id, vec![]),
                node("q |- q", BaseRule::Id, vec![]),
            ]
        };
        let good = node(
            "p -> q |- p -> q",
            BaseRule::ImpR,
            vec![node("p o (p -> q) |- q", BaseRule::ImpL, axioms())],
        );
        assert_eq!(check_proof(&good, &RuleSet::bdfnl()), Ok(()));
        let wrong = node(
            "p -> q |- p -> q",
            BaseRule::ImpR,
            vec![node("(p -> q) o p |- q", BaseRule::ImpL, axioms())],
        );
        let err = check_proof(&wrong, &RuleSet::bdfnl()).unwrap_err();
        assert!(err.path.is_empty());
    }

    #[test]
    fn offending_nodes_are_located() {
        let d = node(
            "p & q |- q & p",
            BaseRule::AndL,
            vec![node(
                "p ^ q |- q & p",
                BaseRule::AndR,
                vec![
                    node("p |- q", BaseRule::Id, vec![]),
                    node("q |- p", BaseRule::Id, vec![]),
                ],
            )],
        );
        let err = check_proof(&d, &RuleSet::bdfnl()).unwrap_err();
        assert_eq!(err.path, vec![0, 0]);
    }

    #[test]
    fn trees_round_trip_through_json() {
        let d = prove(&cs("p & q |- q & p"), &RuleSet::bdfnl(), &Limits::default())
            .unwrap()
            .unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: DerivationTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}
