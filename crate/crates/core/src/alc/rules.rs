//! The rules of the calculus, each usable top-down (`reverse = false`) or
//! bottom-up.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::{AlcError, AlcState};
use crate::syntax::{Formula, Inequality, Name, Polarity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlcRule {
    AndS,
    OrS,
    RL1,
    RL2,
    RR1,
    RR2,
    Ap1,
    Ap2,
    ImpAp1,
    ImpAp2,
    ImpAp3,
    ImpAp4,
    ProdAp1,
    ProdAp2,
    ProdAp3,
    ProdAp4,
    AndAp5,
    AndAp6,
    OrAp1,
    OrAp2,
    RAck,
    LAck,
    Rename,
}

impl AlcRule {
    pub const ALL: [AlcRule; 23] = [
        AlcRule::AndS,
        AlcRule::OrS,
        AlcRule::RL1,
        AlcRule::RL2,
        AlcRule::RR1,
        AlcRule::RR2,
        AlcRule::Ap1,
        AlcRule::Ap2,
        AlcRule::ImpAp1,
        AlcRule::ImpAp2,
        AlcRule::ImpAp3,
        AlcRule::ImpAp4,
        AlcRule::ProdAp1,
        AlcRule::ProdAp2,
        AlcRule::ProdAp3,
        AlcRule::ProdAp4,
        AlcRule::AndAp5,
        AlcRule::AndAp6,
        AlcRule::OrAp1,
        AlcRule::OrAp2,
        AlcRule::RAck,
        AlcRule::LAck,
        AlcRule::Rename,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlcRule::AndS => "AndS",
            AlcRule::OrS => "OrS",
            AlcRule::RL1 => "RL1",
            AlcRule::RL2 => "RL2",
            AlcRule::RR1 => "RR1",
            AlcRule::RR2 => "RR2",
            AlcRule::Ap1 => "Ap1",
            AlcRule::Ap2 => "Ap2",
            AlcRule::ImpAp1 => "ImpAp1",
            AlcRule::ImpAp2 => "ImpAp2",
            AlcRule::ImpAp3 => "ImpAp3",
            AlcRule::ImpAp4 => "ImpAp4",
            AlcRule::ProdAp1 => "ProdAp1",
            AlcRule::ProdAp2 => "ProdAp2",
            AlcRule::ProdAp3 => "ProdAp3",
            AlcRule::ProdAp4 => "ProdAp4",
            AlcRule::AndAp5 => "AndAp5",
            AlcRule::AndAp6 => "AndAp6",
            AlcRule::OrAp1 => "OrAp1",
            AlcRule::OrAp2 => "OrAp2",
            AlcRule::RAck => "RAck",
            AlcRule::LAck => "LAck",
            AlcRule::Rename => "Rename",
        }
    }

    /// Rules that act on one assumption and, top-down, introduce a fresh
    /// variable.
    pub(crate) fn is_assumption_approximation(self) -> bool {
        matches!(
            self,
            AlcRule::ImpAp1
                | AlcRule::ImpAp2
                | AlcRule::ImpAp3
                | AlcRule::ImpAp4
                | AlcRule::ProdAp1
                | AlcRule::ProdAp2
                | AlcRule::ProdAp3
                | AlcRule::ProdAp4
                | AlcRule::AndAp5
                | AlcRule::AndAp6
                | AlcRule::OrAp1
                | AlcRule::OrAp2
        )
    }

    pub(crate) fn introduces_variable(self) -> bool {
        self.is_assumption_approximation() || matches!(self, AlcRule::Ap1 | AlcRule::Ap2)
    }
}

impl fmt::Display for AlcRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for AlcRule {
    type Err = UnknownRule;

    /// Accepts the ASCII names and the symbolic spellings `&S`, `|S`,
    /// `->Ap1`, `*Ap3`, `&Ap5`, `|Ap1`, and `AAp1` for `Ap1`.
    fn from_str(s: &str) -> Result<Self, UnknownRule> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let canon = t
            .replace("->", "Imp")
            .replace('*', "Prod")
            .replace('&', "And")
            .replace('|', "Or");
        let canon = match canon.as_str() {
            "AAp1" => "Ap1".to_string(),
            "AAp2" | "AAP2" => "Ap2".to_string(),
            other => other.to_string(),
        };
        AlcRule::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(&canon))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// A rule application. `operands` index the assumptions in their printed
/// order; `args` carry the fresh variable (top-down approximations), the
/// eliminated variable (bottom-up approximations and Ackermann rules) or
/// `old new` pairs (renaming). Missing operands are filled with the first
/// assumption the rule applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcAction {
    pub rule: AlcRule,
    pub reverse: bool,
    pub operands: Vec<usize>,
    pub args: Vec<Name>,
}

impl AlcAction {
    pub fn new(rule: AlcRule) -> Self {
        AlcAction {
            rule,
            reverse: false,
            operands: Vec::new(),
            args: Vec::new(),
        }
    }

    pub fn reversed(mut self) -> Self {
        self.reverse = true;
        self
    }

    pub fn on(mut self, ix: usize) -> Self {
        self.operands.push(ix);
        self
    }

    pub fn with(mut self, name: &str) -> Self {
        self.args.push(Name::from(name));
        self
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.operands.iter().map(|i| i.to_string()).collect();
        parts.extend(self.args.iter().map(|a| a.to_string()));
        parts.join(" ")
    }
}

fn mismatch(rule: AlcRule, reason: impl Into<String>) -> AlcError {
    AlcError::Mismatch {
        rule: rule.to_string(),
        reason: reason.into(),
    }
}

fn ineq(l: Formula, r: Formula) -> Inequality {
    Inequality::new(l, r)
}

fn two(f: &Formula) -> (Formula, Formula) {
    let (a, b) = f.children().expect("binary");
    (a.clone(), b.clone())
}

/// Top-down image of one assumption under a single-assumption rule.
pub(crate) fn forward(
    rule: AlcRule,
    a: &Inequality,
    p: Option<&Formula>,
) -> Option<Vec<Inequality>> {
    use Formula as F;
    let (l, r) = (&a.lhs, &a.rhs);
    let fresh = || p.cloned().expect("fresh variable supplied");
    if rule.is_assumption_approximation() && p.is_none() {
        return None;
    }
    Some(match (rule, l, r) {
        (AlcRule::AndS, _, F::And(..)) => {
            let (x, y) = two(r);
            vec![ineq(l.clone(), x), ineq(l.clone(), y)]
        }
        (AlcRule::OrS, F::Or(..), _) => {
            let (x, y) = two(l);
            vec![ineq(x, r.clone()), ineq(y, r.clone())]
        }
        (AlcRule::RL1, _, F::Imp(..)) => {
            let (phi, gamma) = two(r);
            vec![ineq(F::prod(phi, l.clone()), gamma)]
        }
        (AlcRule::RL2, _, F::LImp(..)) => {
            let (gamma, psi) = two(r);
            vec![ineq(F::prod(l.clone(), psi), gamma)]
        }
        (AlcRule::ImpAp1, F::Imp(..), _) => {
            let (phi, psi) = two(l);
            vec![ineq(fresh(), phi), ineq(F::imp(fresh(), psi), r.clone())]
        }
        (AlcRule::ImpAp2, F::Imp(..), _) => {
            let (phi, psi) = two(l);
            vec![ineq(psi, fresh()), ineq(F::imp(phi, fresh()), r.clone())]
        }
        (AlcRule::ImpAp3, _, F::Imp(..)) => {
            let (phi, psi) = two(r);
            vec![ineq(phi, fresh()), ineq(l.clone(), F::imp(fresh(), psi))]
        }
        (AlcRule::ImpAp4, _, F::Imp(..)) => {
            let (phi, psi) = two(r);
            vec![ineq(fresh(), psi), ineq(l.clone(), F::imp(phi, fresh()))]
        }
        (AlcRule::ProdAp1, _, F::Prod(..)) => {
            let (psi, gamma) = two(r);
            vec![ineq(fresh(), psi), ineq(l.clone(), F::prod(fresh(), gamma))]
        }
        (AlcRule::ProdAp2, _, F::Prod(..)) => {
            let (psi, gamma) = two(r);
            vec![ineq(fresh(), gamma), ineq(l.clone(), F::prod(psi, fresh()))]
        }
        (AlcRule::ProdAp3, F::Prod(..), _) => {
            let (phi, psi) = two(l);
            vec![ineq(phi, fresh()), ineq(F::prod(fresh(), psi), r.clone())]
        }
        (AlcRule::ProdAp4, F::Prod(..), _) => {
            let (phi, psi) = two(l);
            vec![ineq(psi, fresh()), ineq(F::prod(phi, fresh()), r.clone())]
        }
        (AlcRule::AndAp5, F::And(..), _) => {
            let (phi, psi) = two(l);
            vec![ineq(phi, fresh()), ineq(F::and(fresh(), psi), r.clone())]
        }
        (AlcRule::AndAp6, F::And(..), _) => {
            let (phi, psi) = two(l);
            vec![ineq(psi, fresh()), ineq(F::and(phi, fresh()), r.clone())]
        }
        (AlcRule::OrAp1, _, F::Or(..)) => {
            let (psi, gamma) = two(r);
            vec![ineq(fresh(), psi), ineq(l.clone(), F::or(fresh(), gamma))]
        }
        (AlcRule::OrAp2, _, F::Or(..)) => {
            let (psi, gamma) = two(r);
            vec![ineq(fresh(), gamma), ineq(l.clone(), F::or(psi, fresh()))]
        }
        _ => return None,
    })
}

/// Bottom-up candidates for the residuation rules on one inequality.
fn unresiduate(rule: AlcRule, a: &Inequality) -> Option<Inequality> {
    let Formula::Prod(phi, psi) = &a.lhs else {
        return None;
    };
    let (phi, psi) = ((**phi).clone(), (**psi).clone());
    match rule {
        AlcRule::RL1 | AlcRule::RR1 => Some(ineq(psi, Formula::imp(phi, a.rhs.clone()))),
        AlcRule::RL2 | AlcRule::RR2 => Some(ineq(phi, Formula::limp(a.rhs.clone(), psi))),
        _ => None,
    }
}

fn var_name(f: &Formula) -> Option<&Name> {
    match f {
        Formula::Var(v) => Some(v),
        _ => None,
    }
}

fn fresh_arg(
    action: &AlcAction,
    st: &AlcState,
    used: &BTreeSet<Name>,
) -> Result<Formula, AlcError> {
    let name = action
        .args
        .first()
        .cloned()
        .unwrap_or_else(|| fresh_name(used.iter().chain(st.vars().iter())));
    if used.contains(&name) || st.vars().contains(&name) {
        return Err(AlcError::NotFresh(name));
    }
    Ok(Formula::Var(name))
}

/// The first of `s t u v w x y z s1 t1 ...` not among `taken`.
pub(crate) fn fresh_name<'a>(taken: impl Iterator<Item = &'a Name>) -> Name {
    let taken: BTreeSet<&str> = taken.map(|n| &**n).collect();
    const STEMS: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];
    (0..)
        .map(|k| {
            let stem = STEMS[k % STEMS.len()];
            match k / STEMS.len() {
                0 => stem.to_string(),
                round => format!("{stem}{round}"),
            }
        })
        .find(|n| !taken.contains(n.as_str()))
        .map(|n| Name::from(n.as_str()))
        .expect("unbounded")
}

fn pick<'a>(
    st: &'a AlcState,
    action: &AlcAction,
    k: usize,
) -> Result<Option<&'a Inequality>, AlcError> {
    match action.operands.get(k) {
        Some(&ix) => st
            .assumptions
            .iter()
            .nth(ix)
            .map(Some)
            .ok_or(AlcError::BadOperand(ix)),
        None => Ok(None),
    }
}

fn replace(st: &AlcState, old: &[&Inequality], new: Vec<Inequality>, goal: Inequality) -> AlcState {
    let mut assumptions = st.assumptions.clone();
    for o in old {
        assumptions.remove(*o);
    }
    assumptions.extend(new);
    AlcState { assumptions, goal }
}

/// Apply `action` to `st`. `used` lists every variable mentioned earlier in
/// the derivation, which fresh variables must avoid.
pub fn alc_apply(
    st: &AlcState,
    action: &AlcAction,
    used: &BTreeSet<Name>,
) -> Result<AlcState, AlcError> {
    let rule = action.rule;
    match (rule, action.reverse) {
        (AlcRule::RR1 | AlcRule::RR2, false) => {
            let fake = AlcAction::new(if rule == AlcRule::RR1 {
                AlcRule::RL1
            } else {
                AlcRule::RL2
            });
            let out =
                forward(fake.rule, &st.goal, None).ok_or_else(|| mismatch(rule, "goal shape"))?;
            Ok(AlcState::new(st.assumptions.clone(), out[0].clone()))
        }
        (AlcRule::RR1 | AlcRule::RR2, true) => {
            let goal = unresiduate(rule, &st.goal)
                .ok_or_else(|| mismatch(rule, "goal is not a product"))?;
            Ok(AlcState::new(st.assumptions.clone(), goal))
        }
        (AlcRule::Ap1 | AlcRule::Ap2, false) => {
            let p = fresh_arg(action, st, used)?;
            let g = &st.goal;
            let (bound, goal) = if rule == AlcRule::Ap1 {
                (ineq(p.clone(), g.lhs.clone()), ineq(p, g.rhs.clone()))
            } else {
                (ineq(g.rhs.clone(), p.clone()), ineq(g.lhs.clone(), p))
            };
            Ok(replace(st, &[], vec![bound], goal))
        }
        (AlcRule::Ap1 | AlcRule::Ap2, true) => {
            let left = rule == AlcRule::Ap1;
            let p = if left { &st.goal.lhs } else { &st.goal.rhs };
            let pv = var_name(p).ok_or_else(|| mismatch(rule, "goal side is not a variable"))?;
            let bounds: Vec<&Inequality> = st
                .assumptions
                .iter()
                .filter(|a| if left { a.lhs == *p } else { a.rhs == *p })
                .collect();
            for b in bounds {
                let other = if left { &b.rhs } else { &b.lhs };
                let elsewhere = st
                    .assumptions
                    .iter()
                    .any(|a| a != b && a.vars().contains(pv))
                    || other.contains_var(pv)
                    || (if left { &st.goal.rhs } else { &st.goal.lhs }).contains_var(pv);
                if !elsewhere {
                    let goal = if left {
                        ineq(other.clone(), st.goal.rhs.clone())
                    } else {
                        ineq(st.goal.lhs.clone(), other.clone())
                    };
                    return Ok(replace(st, &[b], vec![], goal));
                }
            }
            Err(mismatch(rule, "no assumption bounds the goal variable"))
        }
        (AlcRule::RAck | AlcRule::LAck, false) => ackermann(st, action),
        (AlcRule::RAck | AlcRule::LAck, true) => {
            Err(mismatch(rule, "Ackermann rules are applied top-down"))
        }
        (AlcRule::Rename, _) => rename(st, action),
        (_, false) => {
            let fresh = if rule.is_assumption_approximation() {
                Some(fresh_arg(action, st, used)?)
            } else {
                None
            };
            let candidates: Vec<&Inequality> = match pick(st, action, 0)? {
                Some(a) => vec![a],
                None => st.assumptions.iter().collect(),
            };
            for a in candidates {
                if let Some(out) = forward(rule, a, fresh.as_ref()) {
                    return Ok(replace(st, &[a], out, st.goal.clone()));
                }
            }
            Err(mismatch(rule, "no matching assumption"))
        }
        (AlcRule::RL1 | AlcRule::RL2, true) => {
            let candidates: Vec<&Inequality> = match pick(st, action, 0)? {
                Some(a) => vec![a],
                None => st.assumptions.iter().collect(),
            };
            for a in candidates {
                if let Some(b) = unresiduate(rule, a) {
                    return Ok(replace(st, &[a], vec![b], st.goal.clone()));
                }
            }
            Err(mismatch(rule, "no product on a left side"))
        }
        (AlcRule::AndS | AlcRule::OrS, true) => {
            let list: Vec<&Inequality> = st.assumptions.iter().collect();
            let pairs: Vec<(&Inequality, &Inequality)> =
                match (pick(st, action, 0)?, pick(st, action, 1)?) {
                    (Some(a), Some(b)) => vec![(a, b)],
                    _ => list
                        .iter()
                        .flat_map(|a| list.iter().map(move |b| (*a, *b)))
                        .filter(|(a, b)| a != b)
                        .collect(),
                };
            for (a, b) in pairs {
                let merged = if rule == AlcRule::AndS && a.lhs == b.lhs {
                    ineq(a.lhs.clone(), Formula::and(a.rhs.clone(), b.rhs.clone()))
                } else if rule == AlcRule::OrS && a.rhs == b.rhs {
                    ineq(Formula::or(a.lhs.clone(), b.lhs.clone()), a.rhs.clone())
                } else {
                    continue;
                };
                return Ok(replace(st, &[a, b], vec![merged], st.goal.clone()));
            }
            Err(mismatch(rule, "no pair of assumptions to merge"))
        }
        (_, true) => unapproximate(st, action),
    }
}

/// Bottom-up reading of an assumption approximation: the named variable
/// occurs in exactly two assumptions, which fold back into one.
fn unapproximate(st: &AlcState, action: &AlcAction) -> Result<AlcState, AlcError> {
    let rule = action.rule;
    let candidates: Vec<Name> = match action.args.first() {
        Some(p) => vec![p.clone()],
        None => st.vars().into_iter().collect(),
    };
    for p in candidates {
        if st.goal.vars().contains(&p) {
            continue;
        }
        let holders: Vec<&Inequality> = st
            .assumptions
            .iter()
            .filter(|a| a.vars().contains(&p))
            .collect();
        let [x, y] = holders.as_slice() else {
            continue;
        };
        let pv = Formula::Var(p.clone());
        for (bound, main) in [(*x, *y), (*y, *x)] {
            let value = if bound.lhs == pv {
                &bound.rhs
            } else if bound.rhs == pv {
                &bound.lhs
            } else {
                continue;
            };
            if value.contains_var(&p) {
                continue;
            }
            let folded = ineq(
                main.lhs.substitute_var(&p, value),
                main.rhs.substitute_var(&p, value),
            );
            let Some(out) = forward(rule, &folded, Some(&pv)) else {
                continue;
            };
            let out: BTreeSet<Inequality> = out.into_iter().collect();
            let have: BTreeSet<Inequality> = [bound.clone(), main.clone()].into_iter().collect();
            if out == have {
                return Ok(replace(st, &[bound, main], vec![folded], st.goal.clone()));
            }
        }
    }
    Err(mismatch(rule, "no foldable pair of assumptions"))
}

fn sequent_signs(i: &Inequality, p: &str) -> (bool, bool) {
    // (.0) some occurrence makes the sequent easier as p grows,
    // (.1) some occurrence makes it harder.
    let l = i.lhs.polarity(p);
    let r = i.rhs.polarity(p);
    let pos = |x: Polarity| matches!(x, Polarity::Positive | Polarity::Both);
    let neg = |x: Polarity| matches!(x, Polarity::Negative | Polarity::Both);
    (neg(l) || pos(r), pos(l) || neg(r))
}

fn ackermann(st: &AlcState, action: &AlcAction) -> Result<AlcState, AlcError> {
    let rule = action.rule;
    let right = rule == AlcRule::RAck;
    let p = action
        .args
        .first()
        .cloned()
        .ok_or_else(|| mismatch(rule, "no variable named"))?;
    let side = |reason: &str| AlcError::SideCondition {
        rule: rule.to_string(),
        var: p.clone(),
        reason: reason.to_string(),
    };
    let pv = Formula::Var(p.clone());
    let mut bounds = Vec::new();
    let mut rest = Vec::new();
    for a in &st.assumptions {
        let (iso, other) = if right {
            (&a.rhs, &a.lhs)
        } else {
            (&a.lhs, &a.rhs)
        };
        if *iso == pv && !other.contains_var(&p) {
            bounds.push(other.clone());
        } else {
            rest.push(a.clone());
        }
    }
    if !st.vars().contains(&p) {
        return Err(side("the variable does not occur"));
    }
    for a in &rest {
        let (up, down) = sequent_signs(a, &p);
        if (right && up) || (!right && down) {
            return Err(side(&format!(
                "`{}` has an occurrence of the wrong sign",
                a.display_sequent()
            )));
        }
    }
    let (up, down) = sequent_signs(&st.goal, &p);
    if (right && down) || (!right && up) {
        return Err(side("the goal has an occurrence of the wrong sign"));
    }
    let value = if right {
        Formula::join_all(bounds)
    } else {
        Formula::meet_all(bounds)
    };
    let binding: BTreeMap<Name, Formula> = [(p.clone(), value)].into();
    Ok(AlcState::new(
        rest.iter().map(|a| a.substitute(&binding)),
        st.goal.substitute(&binding),
    ))
}

fn rename(st: &AlcState, action: &AlcAction) -> Result<AlcState, AlcError> {
    if !action.args.len().is_multiple_of(2) || action.args.is_empty() {
        return Err(mismatch(AlcRule::Rename, "expects `old new` pairs"));
    }
    let map: BTreeMap<Name, Formula> = action
        .args
        .chunks(2)
        .map(|c| (c[0].clone(), Formula::Var(c[1].clone())))
        .collect();
    let vars = st.vars();
    let images: BTreeSet<Name> = vars
        .iter()
        .map(|v| match map.get(v) {
            Some(Formula::Var(n)) => n.clone(),
            _ => v.clone(),
        })
        .collect();
    if images.len() != vars.len() {
        return Err(mismatch(AlcRule::Rename, "renaming is not injective"));
    }
    Ok(AlcState::new(
        st.assumptions.iter().map(|a| a.substitute(&map)),
        st.goal.substitute(&map),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(text: &str) -> AlcState {
        AlcState::parse(text).unwrap()
    }

    fn apply(state: &str, action: AlcAction) -> Result<AlcState, AlcError> {
        let s = st(state);
        let used = s.vars();
        alc_apply(&s, &action, &used)
    }

    #[test]
    fn residuation_on_the_goal() {
        assert_eq!(
            apply("=> q |- p -> p", AlcAction::new(AlcRule::RR1)).unwrap(),
            st("=> p * q |- p")
        );
        assert_eq!(
            apply("=> p * q |- p", AlcAction::new(AlcRule::RR1).reversed()).unwrap(),
            st("=> q |- p -> p")
        );
        assert_eq!(
            apply("=> p * q |- r", AlcAction::new(AlcRule::RR2).reversed()).unwrap(),
            st("=> p |- r <- q")
        );
    }

    #[test]
    fn goal_approximation_needs_a_fresh_variable() {
        let out = apply(
            "=> p & (p -> q) |- q",
            AlcAction::new(AlcRule::Ap1).with("r"),
        )
        .unwrap();
        assert_eq!(out, st("r |- p & (p -> q) => r |- q"));
        assert!(matches!(
            apply(
                "=> p & (p -> q) |- q",
                AlcAction::new(AlcRule::Ap1).with("q")
            ),
            Err(AlcError::NotFresh(_))
        ));
        let back = apply(
            "r |- p & (p -> q) => r |- q",
            AlcAction::new(AlcRule::Ap1).reversed(),
        )
        .unwrap();
        assert_eq!(back, st("=> p & (p -> q) |- q"));
    }

    #[test]
    fn example_tracks_transitivity() {
        let s = st("p * s |- q ; q * s |- r => p * s |- r");
        let used = s.vars();
        let a = alc_apply(&s, &AlcAction::new(AlcRule::RAck).with("r"), &used).unwrap();
        assert_eq!(a, st("p * s |- q => p * s |- q * s"));
        let b = alc_apply(&a, &AlcAction::new(AlcRule::RAck).with("q"), &used).unwrap();
        assert_eq!(b, st("=> p * s |- (p * s) * s"));
    }

    #[test]
    fn ackermann_side_conditions() {
        // q occurs on the wrong side of the goal.
        assert!(apply("p |- q => q |- p", AlcAction::new(AlcRule::RAck).with("q")).is_err());
        // Several bounds are joined; other assumptions must not grow easier with q.
        assert_eq!(
            apply(
                "p |- q ; s |- q => s |- p",
                AlcAction::new(AlcRule::RAck).with("q")
            )
            .unwrap(),
            st("=> s |- p")
        );
        assert!(apply(
            "p |- q ; s |- q -> r => s |- p",
            AlcAction::new(AlcRule::RAck).with("q")
        )
        .is_ok());
        assert!(apply(
            "p |- q ; s |- r -> q => s |- p",
            AlcAction::new(AlcRule::RAck).with("q")
        )
        .is_err());
        let l = apply(
            "q |- p ; q * s |- r => s |- r",
            AlcAction::new(AlcRule::LAck).with("q"),
        );
        assert!(l.is_err());
    }

    #[test]
    fn assumption_approximations_fold_back() {
        let s = "(p -> q) -> (p -> r) |- t => s |- t";
        let a = apply(s, AlcAction::new(AlcRule::ImpAp1).with("u")).unwrap();
        assert_eq!(a, st("u |- p -> q ; u -> (p -> r) |- t => s |- t"));
        let used: BTreeSet<Name> = a.vars();
        let b = alc_apply(
            &a,
            &AlcAction::new(AlcRule::ImpAp1).reversed().with("u"),
            &used,
        )
        .unwrap();
        assert_eq!(b, st(s));
        let c = apply(s, AlcAction::new(AlcRule::ImpAp2).with("v")).unwrap();
        assert_eq!(c, st("p -> r |- v ; (p -> q) -> v |- t => s |- t"));
    }

    #[test]
    fn splitting_both_ways() {
        let a = apply("s |- p & q => s |- r", AlcAction::new(AlcRule::AndS)).unwrap();
        assert_eq!(a, st("s |- p ; s |- q => s |- r"));
        let b = apply(
            "s |- p ; s |- q => s |- r",
            AlcAction::new(AlcRule::AndS).reversed(),
        )
        .unwrap();
        assert_eq!(b, st("s |- p & q => s |- r"));
    }

    #[test]
    fn rule_names_parse() {
        assert_eq!("->Ap2".parse::<AlcRule>().unwrap(), AlcRule::ImpAp2);
        assert_eq!("(AAp1)".parse::<AlcRule>().unwrap(), AlcRule::Ap1);
        assert_eq!("&S".parse::<AlcRule>().unwrap(), AlcRule::AndS);
        assert_eq!("*Ap3".parse::<AlcRule>().unwrap(), AlcRule::ProdAp3);
        assert!("Cut".parse::<AlcRule>().is_err());
    }
}
