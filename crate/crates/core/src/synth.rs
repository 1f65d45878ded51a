//! Structural rules read off product-language sequents.
//!
//! A sequent `chi |- delta` built from `*` and variables yields the rule
//!
//! ```text
//!   G[delta'] |- phi
//!   ----------------
//!   G[chi']   |- phi
//! ```
//!
//! where `chi'` and `delta'` replace `*` by the structural product `o` and
//! each variable by a structure metavariable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::Axiom;
use crate::syntax::{
    parse_inequality, Formula, Inequality, Language, Name, Structure, SyntaxError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("`{0}` is not a sequent of the product language")]
    NotProduct(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("rule `{name}` does not match its source: {reason}")]
    Inconsistent { name: String, reason: String },
}

fn check_product(sigma: &Inequality) -> Result<(), SynthError> {
    if sigma.lhs.in_language(Language::Product) && sigma.rhs.in_language(Language::Product) {
        Ok(())
    } else {
        Err(SynthError::NotProduct(sigma.display_sequent()))
    }
}

/// Every variable occurs at most once on the left.
pub fn is_good(sigma: &Inequality) -> Result<bool, SynthError> {
    check_product(sigma)?;
    Ok(sigma.lhs.vars().iter().all(|v| sigma.lhs.count_var(v) == 1))
}

/// Every variable of the right side also occurs on the left.
pub fn preserves_subformula(sigma: &Inequality) -> bool {
    sigma.rhs.vars().is_subset(&sigma.lhs.vars())
}

/// Read a product formula as a structure pattern: variables become
/// metavariables (kept as `Leaf(Var)`), `*` becomes `o`.
fn pattern(f: &Formula) -> Structure {
    match f {
        Formula::Prod(a, b) => Structure::prod(pattern(a), pattern(b)),
        other => Structure::leaf(other.clone()),
    }
}

/// Bind metavariables of `pat` so that it equals `s`.
pub(crate) fn match_pattern(
    pat: &Structure,
    s: &Structure,
    binding: &mut BTreeMap<Name, Structure>,
) -> bool {
    match (pat, s) {
        (Structure::Leaf(Formula::Var(v)), _) => match binding.get(v) {
            Some(bound) => bound == s,
            None => {
                binding.insert(v.clone(), s.clone());
                true
            }
        },
        (Structure::Leaf(c), Structure::Leaf(d)) => c == d,
        (Structure::Prod(a, b), Structure::Prod(c, d)) => {
            match_pattern(a, c, binding) && match_pattern(b, d, binding)
        }
        _ => false,
    }
}

pub(crate) fn instantiate(
    pat: &Structure,
    binding: &BTreeMap<Name, Structure>,
) -> Option<Structure> {
    Some(match pat {
        Structure::Leaf(Formula::Var(v)) => binding.get(v)?.clone(),
        Structure::Leaf(c) => Structure::leaf(c.clone()),
        Structure::Prod(a, b) => {
            Structure::prod(instantiate(a, binding)?, instantiate(b, binding)?)
        }
        Structure::Meet(a, b) => {
            Structure::meet(instantiate(a, binding)?, instantiate(b, binding)?)
        }
    })
}

/// A deep-inference structural rule with a single context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralRule {
    pub name: String,
    pub source: Inequality,
    /// Pattern of the substructure in the premise (from the right side).
    pub premise: Structure,
    /// Pattern of the substructure in the conclusion (from the left side).
    pub conclusion: Structure,
}

/// Build the rule for `sigma`.
pub fn synthesize_rule(name: &str, sigma: &Inequality) -> Result<StructuralRule, SynthError> {
    check_product(sigma)?;
    Ok(StructuralRule {
        name: name.to_string(),
        source: sigma.clone(),
        premise: pattern(&sigma.rhs),
        conclusion: pattern(&sigma.lhs),
    })
}

impl StructuralRule {
    /// The rule for a named correspondent (`wl`, `tr`, `ct`, ...).
    pub fn named(name: &str) -> Option<StructuralRule> {
        let axiom = Axiom::from_correspondent_name(name)?;
        let (n, _) = axiom.correspondent_text()?;
        synthesize_rule(n, &axiom.correspondent()?).ok()
    }

    pub fn is_good(&self) -> bool {
        is_good(&self.source).unwrap_or(false)
    }

    pub fn preserves_subformula(&self) -> bool {
        preserves_subformula(&self.source)
    }

    /// Every premise antecedent obtained by rewriting one instance of the
    /// conclusion pattern inside `s`. Rules whose premise has metavariables
    /// absent from the conclusion produce nothing here.
    pub fn backward(&self, s: &Structure) -> Vec<Structure> {
        let mut out = Vec::new();
        for path in s.positions() {
            let sub = s.at_path(&path).expect("position exists");
            let mut binding = BTreeMap::new();
            if match_pattern(&self.conclusion, sub, &mut binding) {
                if let Some(inst) = instantiate(&self.premise, &binding) {
                    out.push(s.replace_at(&path, inst).expect("position exists"));
                }
            }
        }
        out
    }

    /// Whether `conclusion` is obtained from `premise` by one application
    /// of the rule.
    pub fn relates(&self, conclusion: &Structure, premise: &Structure) -> bool {
        conclusion.positions().into_iter().any(|path| {
            let (Some(c), Some(p)) = (conclusion.at_path(&path), premise.at_path(&path)) else {
                return false;
            };
            let mut binding = BTreeMap::new();
            match_pattern(&self.conclusion, c, &mut binding)
                && match_pattern(&self.premise, p, &mut binding)
                && conclusion.replace_at(&path, p.clone()).as_ref() == Some(premise)
        })
    }

    /// Metavariable names used by the rule.
    pub fn metavariables(&self) -> BTreeSet<Name> {
        self.source.vars()
    }

    fn render(&self, pat: &Structure) -> String {
        let binding: BTreeMap<Name, Structure> = self
            .metavariables()
            .into_iter()
            .map(|v| {
                let shown = Formula::var(&v.to_uppercase());
                (v, Structure::leaf(shown))
            })
            .collect();
        format!(
            "G[{}] |- phi",
            instantiate(pat, &binding).expect("all metavariables bound")
        )
    }

    pub fn premise_text(&self) -> String {
        self.render(&self.premise)
    }

    pub fn conclusion_text(&self) -> String {
        self.render(&self.conclusion)
    }
}

impl fmt::Display for StructuralRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) {}  /  {}",
            self.name,
            self.premise_text(),
            self.conclusion_text()
        )
    }
}

/// Serialized form of a rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFile {
    pub name: String,
    pub source: String,
    pub premise: String,
    pub conclusion: String,
    pub good: bool,
    pub subformula: bool,
}

impl From<&StructuralRule> for RuleFile {
    fn from(r: &StructuralRule) -> Self {
        RuleFile {
            name: r.name.clone(),
            source: r.source.display_sequent(),
            premise: r.premise_text(),
            conclusion: r.conclusion_text(),
            good: r.is_good(),
            subformula: r.preserves_subformula(),
        }
    }
}

impl TryFrom<&RuleFile> for StructuralRule {
    type Error = SynthError;

    /// Rebuilds the rule from its source and checks the stored patterns.
    fn try_from(f: &RuleFile) -> Result<Self, SynthError> {
        let sigma = parse_inequality(&f.source, Language::Product)?;
        let rule = synthesize_rule(&f.name, &sigma)?;
        if rule.premise_text() != f.premise || rule.conclusion_text() != f.conclusion {
            return Err(SynthError::Inconsistent {
                name: f.name.clone(),
                reason: format!(
                    "expected `{}` / `{}`",
                    rule.premise_text(),
                    rule.conclusion_text()
                ),
            });
        }
        Ok(rule)
    }
}

impl Serialize for StructuralRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RuleFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructuralRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let file = RuleFile::deserialize(d)?;
        StructuralRule::try_from(&file).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_structure;

    fn prod(text: &str) -> Inequality {
        parse_inequality(text, Language::Product).unwrap()
    }

    #[test]
    fn goodness() {
        assert!(is_good(&prod("p * s |- (p * s) * s")).unwrap());
        assert!(!is_good(&prod("(p * s) * s |- p * s")).unwrap());
        assert!(is_good(&prod("p |- p * p")).unwrap());
        let si = parse_inequality("p |- q -> p", Language::StrictImplication).unwrap();
        assert!(matches!(is_good(&si), Err(SynthError::NotProduct(_))));
    }

    #[test]
    fn subformula_preservation() {
        assert!(preserves_subformula(&prod("p * s |- (p * s) * s")));
        assert!(!preserves_subformula(&prod("p |- p * q")));
        assert!(preserves_subformula(&prod(
            "p * (u * s) |- (p * u) * (p * s)"
        )));
    }

    #[test]
    fn rule_shapes() {
        let tr = StructuralRule::named("tr").unwrap();
        assert_eq!(tr.premise_text(), "G[(P o S) o S] |- phi");
        assert_eq!(tr.conclusion_text(), "G[P o S] |- phi");
        let wl = StructuralRule::named("wl").unwrap();
        assert_eq!(wl.premise_text(), "G[P] |- phi");
        assert_eq!(wl.conclusion_text(), "G[P o Q] |- phi");
        let ct = StructuralRule::named("ct").unwrap();
        assert_eq!(ct.premise_text(), "G[P o P] |- phi");
        assert_eq!(ct.conclusion_text(), "G[P] |- phi");
    }

    #[test]
    fn backward_application_under_a_context() {
        let tr = StructuralRule::named("tr").unwrap();
        let s = parse_structure("r ^ (a o (b ^ c))").unwrap();
        let out = tr.backward(&s);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].to_string(), "r ^ ((a o (b ^ c)) o (b ^ c))");
        assert!(tr.relates(&s, &out[0]));
        assert!(!tr.relates(&out[0], &s));
    }

    #[test]
    fn rule_files_round_trip() {
        let b = StructuralRule::named("b").unwrap();
        let json = serde_json::to_string(&b).unwrap();
        let back: StructuralRule = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);
        let tampered = json.replace("G[R o (T o S)]", "G[R o (S o T)]");
        assert!(serde_json::from_str::<StructuralRule>(&tampered).is_err());
    }
}
