//! Rule names and backward application of the fixed rules.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{ConsecutionSequent, Formula, Structure};

/// The fixed axioms, logical rules and meet-structural rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRule {
    Id,
    Top,
    Bot,
    ImpL,
    ImpR,
    LImpL,
    LImpR,
    ProdL,
    ProdR,
    AndL,
    AndR,
    OrL,
    OrR1,
    OrR2,
    Contract,
    Weaken,
    Exchange,
    Assoc,
}

impl BaseRule {
    pub const ALL: [BaseRule; 18] = [
        BaseRule::Id,
        BaseRule::Top,
        BaseRule::Bot,
        BaseRule::ImpL,
        BaseRule::ImpR,
        BaseRule::LImpL,
        BaseRule::LImpR,
        BaseRule::ProdL,
        BaseRule::ProdR,
        BaseRule::AndL,
        BaseRule::AndR,
        BaseRule::OrL,
        BaseRule::OrR1,
        BaseRule::OrR2,
        BaseRule::Contract,
        BaseRule::Weaken,
        BaseRule::Exchange,
        BaseRule::Assoc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseRule::Id => "Id",
            BaseRule::Top => "Top",
            BaseRule::Bot => "Bot",
            BaseRule::ImpL => "ImpL",
            BaseRule::ImpR => "ImpR",
            BaseRule::LImpL => "LImpL",
            BaseRule::LImpR => "LImpR",
            BaseRule::ProdL => "ProdL",
            BaseRule::ProdR => "ProdR",
            BaseRule::AndL => "AndL",
            BaseRule::AndR => "AndR",
            BaseRule::OrL => "OrL",
            BaseRule::OrR1 => "OrR1",
            BaseRule::OrR2 => "OrR2",
            BaseRule::Contract => "C",
            BaseRule::Weaken => "W",
            BaseRule::Exchange => "E",
            BaseRule::Assoc => "As",
        }
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, BaseRule::Id | BaseRule::Top | BaseRule::Bot)
    }
}

/// Name of the rule applied at a derivation node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Base(BaseRule),
    /// A synthesized structural rule, by name.
    Structural(String),
    Mix,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleName::Base(r) => f.write_str(r.name()),
            RuleName::Structural(n) => f.write_str(n),
            RuleName::Mix => f.write_str("mix"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("empty rule name")]
pub struct EmptyRuleName;

impl FromStr for RuleName {
    type Err = EmptyRuleName;

    /// Base rule names and `mix` are recognised; anything else names a
    /// structural rule.
    fn from_str(s: &str) -> Result<RuleName, EmptyRuleName> {
        let s = s.trim();
        if s.is_empty() {
            return Err(EmptyRuleName);
        }
        if s == "mix" {
            return Ok(RuleName::Mix);
        }
        Ok(BaseRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .map(RuleName::Base)
            .unwrap_or_else(|| RuleName::Structural(s.to_string())))
    }
}

fn seq(antecedent: Structure, succedent: &Formula) -> ConsecutionSequent {
    ConsecutionSequent::new(antecedent, succedent.clone())
}

/// Substructures of `s` with their paths.
fn nodes(s: &Structure) -> impl Iterator<Item = (Vec<bool>, &Structure)> {
    s.positions().into_iter().map(move |p| {
        let node = s.at_path(&p).expect("position exists");
        (p, node)
    })
}

fn replace(s: &Structure, path: &[bool], by: Structure) -> Structure {
    s.replace_at(path, by).expect("position exists")
}

fn leaf(f: &Formula) -> Structure {
    Structure::leaf(f.clone())
}

/// Whether the axiom closes `s`.
pub fn axiom_applies(rule: BaseRule, s: &ConsecutionSequent) -> bool {
    match rule {
        BaseRule::Id => s.antecedent == Structure::Leaf(s.succedent.clone()),
        BaseRule::Top => s.succedent == Formula::Top,
        BaseRule::Bot => s
            .antecedent
            .leaves()
            .into_iter()
            .any(|f| *f == Formula::Bot),
        _ => false,
    }
}

/// Every way to apply `rule` backwards to `s`: each alternative lists the
/// premises in display order.
pub fn backward(rule: BaseRule, s: &ConsecutionSequent) -> Vec<Vec<ConsecutionSequent>> {
    let ant = &s.antecedent;
    let goal = &s.succedent;
    let mut out = Vec::new();
    match rule {
        BaseRule::Id | BaseRule::Top | BaseRule::Bot => {
            if axiom_applies(rule, s) {
                out.push(Vec::new());
            }
        }
        BaseRule::ImpL => {
            for (p, node) in nodes(ant) {
                if let Structure::Prod(delta, right) = node {
                    if let Structure::Leaf(Formula::Imp(a, b)) = right.as_ref() {
                        out.push(vec![
                            seq(delta.as_ref().clone(), a),
                            seq(replace(ant, &p, leaf(b)), goal),
                        ]);
                    }
                }
            }
        }
        BaseRule::LImpL => {
            for (p, node) in nodes(ant) {
                if let Structure::Prod(left, delta) = node {
                    if let Structure::Leaf(Formula::LImp(a, b)) = left.as_ref() {
                        out.push(vec![
                            seq(replace(ant, &p, leaf(a)), goal),
                            seq(delta.as_ref().clone(), b),
                        ]);
                    }
                }
            }
        }
        BaseRule::ImpR => {
            if let Formula::Imp(a, b) = goal {
                out.push(vec![seq(Structure::prod(leaf(a), ant.clone()), b)]);
            }
        }
        BaseRule::LImpR => {
            if let Formula::LImp(a, b) = goal {
                out.push(vec![seq(Structure::prod(ant.clone(), leaf(b)), a)]);
            }
        }
        BaseRule::ProdL | BaseRule::AndL | BaseRule::OrL => {
            for (p, node) in nodes(ant) {
                match (rule, node) {
                    (BaseRule::ProdL, Structure::Leaf(Formula::Prod(a, b))) => {
                        out.push(vec![seq(
                            replace(ant, &p, Structure::prod(leaf(a), leaf(b))),
                            goal,
                        )]);
                    }
                    (BaseRule::AndL, Structure::Leaf(Formula::And(a, b))) => {
                        out.push(vec![seq(
                            replace(ant, &p, Structure::meet(leaf(a), leaf(b))),
                            goal,
                        )]);
                    }
                    (BaseRule::OrL, Structure::Leaf(Formula::Or(a, b))) => {
                        out.push(vec![
                            seq(replace(ant, &p, leaf(a)), goal),
                            seq(replace(ant, &p, leaf(b)), goal),
                        ]);
                    }
                    _ => {}
                }
            }
        }
        BaseRule::ProdR | BaseRule::AndR => match (rule, ant, goal) {
            (BaseRule::ProdR, Structure::Prod(x, y), Formula::Prod(a, b))
            | (BaseRule::AndR, Structure::Meet(x, y), Formula::And(a, b)) => {
                out.push(vec![seq(x.as_ref().clone(), a), seq(y.as_ref().clone(), b)]);
            }
            _ => {}
        },
        BaseRule::OrR1 | BaseRule::OrR2 => {
            if let Formula::Or(a, b) = goal {
                let chosen = if rule == BaseRule::OrR1 { a } else { b };
                out.push(vec![seq(ant.clone(), chosen)]);
            }
        }
        BaseRule::Contract => {
            for (p, node) in nodes(ant) {
                let doubled = Structure::meet(node.clone(), node.clone());
                out.push(vec![seq(replace(ant, &p, doubled), goal)]);
            }
        }
        BaseRule::Weaken => {
            for (p, node) in nodes(ant) {
                if let Structure::Meet(_, kept) = node {
                    out.push(vec![seq(replace(ant, &p, kept.as_ref().clone()), goal)]);
                }
            }
        }
        BaseRule::Exchange => {
            for (p, node) in nodes(ant) {
                if let Structure::Meet(a, b) = node {
                    let swapped = Structure::meet(b.as_ref().clone(), a.as_ref().clone());
                    out.push(vec![seq(replace(ant, &p, swapped), goal)]);
                }
            }
        }
        BaseRule::Assoc => {
            for (p, node) in nodes(ant) {
                if let Structure::Meet(a, bc) = node {
                    if let Structure::Meet(b, c) = bc.as_ref() {
                        let left = Structure::meet(
                            Structure::meet(a.as_ref().clone(), b.as_ref().clone()),
                            c.as_ref().clone(),
                        );
                        out.push(vec![seq(replace(ant, &p, left), goal)]);
                    }
                }
            }
        }
    }
    out
}

/// Whether `conclusion` follows from `premise` (the end sequent of a
/// derivation of `Delta |- phi`) and `right` (of `G[phi]...[phi] |- psi`)
/// by mixing: some occurrences of `phi` in `right` are replaced by `Delta`.
pub fn mix_relates(
    left: &ConsecutionSequent,
    right: &ConsecutionSequent,
    conclusion: &ConsecutionSequent,
) -> bool {
    fn walk(r: &Structure, c: &Structure, phi: &Formula, delta: &Structure) -> bool {
        if r == c {
            return true;
        }
        if matches!(r, Structure::Leaf(f) if f == phi) && c == delta {
            return true;
        }
        match (r, c) {
            (Structure::Prod(a, b), Structure::Prod(x, y))
            | (Structure::Meet(a, b), Structure::Meet(x, y)) => {
                walk(a, x, phi, delta) && walk(b, y, phi, delta)
            }
            _ => false,
        }
    }
    right.succedent == conclusion.succedent
        && walk(
            &right.antecedent,
            &conclusion.antecedent,
            &left.succedent,
            &left.antecedent,
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_consecution;

    fn cs(text: &str) -> ConsecutionSequent {
        parse_consecution(text).unwrap()
    }

    fn shown(alts: Vec<Vec<ConsecutionSequent>>) -> Vec<String> {
        alts.into_iter()
            .map(|ps| {
                ps.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ; ")
            })
            .collect()
    }

    #[test]
    fn implication_left_needs_the_implication_on_the_right() {
        assert_eq!(
            shown(backward(BaseRule::ImpL, &cs("r o (p o (p -> q)) |- s"))),
            ["p |- p ; r o q |- s"]
        );
        assert!(backward(BaseRule::ImpL, &cs("(p -> q) o p |- q")).is_empty());
        assert_eq!(
            shown(backward(BaseRule::LImpL, &cs("(q <- p) o p |- q"))),
            ["q |- q ; p |- p"]
        );
    }

    #[test]
    fn right_rules_place_the_antecedent_correctly() {
        assert_eq!(
            shown(backward(BaseRule::ImpR, &cs("q |- p -> r"))),
            ["p o q |- r"]
        );
        assert_eq!(
            shown(backward(BaseRule::LImpR, &cs("q |- r <- p"))),
            ["q o p |- r"]
        );
    }

    #[test]
    fn meet_structural_rules() {
        let s = cs("a ^ (b ^ c) |- d");
        assert_eq!(
            shown(backward(BaseRule::Weaken, &s)),
            ["b ^ c |- d", "a ^ c |- d"]
        );
        assert_eq!(
            shown(backward(BaseRule::Exchange, &s)),
            ["(b ^ c) ^ a |- d", "a ^ (c ^ b) |- d"]
        );
        assert_eq!(shown(backward(BaseRule::Assoc, &s)), ["(a ^ b) ^ c |- d"]);
        assert_eq!(backward(BaseRule::Contract, &s).len(), 5);
    }

    #[test]
    fn bottom_anywhere_closes() {
        assert!(axiom_applies(BaseRule::Bot, &cs("p o (q ^ bot) |- r")));
        assert!(!axiom_applies(BaseRule::Bot, &cs("p o q |- bot")));
        assert!(axiom_applies(BaseRule::Id, &cs("p & q |- p & q")));
    }

    #[test]
    fn mixing_replaces_chosen_occurrences() {
        let left = cs("a ^ b |- p");
        let right = cs("p o p |- q");
        assert!(mix_relates(&left, &right, &cs("(a ^ b) o p |- q")));
        assert!(mix_relates(&left, &right, &cs("(a ^ b) o (a ^ b) |- q")));
        assert!(mix_relates(&left, &right, &right));
        assert!(!mix_relates(&left, &right, &cs("a o p |- q")));
    }

    #[test]
    fn rule_names_round_trip() {
        for r in BaseRule::ALL {
            assert_eq!(r.name().parse::<RuleName>().unwrap(), RuleName::Base(r));
        }
        assert_eq!(
            "tr".parse::<RuleName>().unwrap(),
            RuleName::Structural("tr".into())
        );
        assert_eq!("mix".parse::<RuleName>().unwrap(), RuleName::Mix);
    }
}
