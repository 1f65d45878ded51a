//! Computing correspondents by following an ALBA run.
//!
//! Each nominal and conominal of the ALBA run is read as a propositional
//! variable, so every ALBA system is also a supersequent. Each ALBA step is
//! replayed as one or more calculus rules and the resulting state is checked
//! against the translated system. The run finishes by folding conominal
//! variables back into their users, removing the goal approximation and
//! residuating implications out of the goal.

use std::collections::{BTreeMap, BTreeSet};

use super::rules::{fresh_name, AlcAction, AlcRule};
use super::{AlcDerivation, AlcError, AlcState};
use crate::alba::{run_alba_with, AlbaOptions, AlbaResult, AlbaRule, AlbaStep};
use crate::syntax::{AtomKind, Formula, Inequality, Name, QuasiInequality};

#[derive(Clone, Debug)]
pub struct AlcOptions {
    /// Give up on derivations longer than this.
    pub max_steps: usize,
    pub alba: AlbaOptions,
}

impl Default for AlcOptions {
    fn default() -> Self {
        AlcOptions {
            max_steps: 25,
            alba: AlbaOptions::default(),
        }
    }
}

/// Derive a product-language correspondent of `seq`, or `None` when the
/// ALBA run cannot be turned into a derivation ending in a product sequent.
pub fn run_alc(seq: &Inequality) -> Result<Option<AlcDerivation>, AlcError> {
    run_alc_with(seq, &AlcOptions::default())
}

pub fn run_alc_with(
    seq: &Inequality,
    opts: &AlcOptions,
) -> Result<Option<AlcDerivation>, AlcError> {
    let result = match run_alba_with(seq, None, &opts.alba) {
        Ok(r) => r,
        Err(_) => return Ok(None),
    };
    let AlbaResult::Success {
        preprocessed,
        traces,
        ..
    } = result
    else {
        return Ok(None);
    };
    if preprocessed.len() != 1 || preprocessed[0] != *seq {
        return Ok(None);
    }
    let mut mirror = Mirror::new(seq);
    for step in &traces[0] {
        if !mirror.replay(step)? {
            return Ok(None);
        }
    }
    mirror.finish()?;
    let d = mirror.derivation;
    if d.steps.len() > opts.max_steps || d.result().is_none() {
        return Ok(None);
    }
    Ok(Some(d))
}

struct Mirror {
    derivation: AlcDerivation,
    nominals: BTreeMap<Name, Formula>,
    conominals: BTreeMap<Name, Formula>,
}

impl Mirror {
    fn new(seq: &Inequality) -> Self {
        Mirror {
            derivation: AlcDerivation::new(AlcState::initial(seq)),
            nominals: BTreeMap::new(),
            conominals: BTreeMap::new(),
        }
    }

    fn state(&self) -> &AlcState {
        self.derivation.last()
    }

    fn fresh(&self) -> Name {
        let mut taken = self.derivation.used_vars();
        taken.extend(
            self.nominals
                .values()
                .chain(self.conominals.values())
                .flat_map(|f| f.vars()),
        );
        fresh_name(taken.iter())
    }

    /// Give every atom of `q` a variable, in order of appearance.
    fn bind_atoms(&mut self, q: &QuasiInequality) {
        for kind in [AtomKind::Nominal, AtomKind::Conominal] {
            let mut names = Vec::new();
            for i in q.antecedent.iter().chain([&q.consequent]) {
                i.lhs.atoms_in_order(kind, &mut names);
                i.rhs.atoms_in_order(kind, &mut names);
            }
            for n in names {
                let known = match kind {
                    AtomKind::Nominal => self.nominals.contains_key(&n),
                    _ => self.conominals.contains_key(&n),
                };
                if !known {
                    let v = Formula::Var(self.fresh());
                    match kind {
                        AtomKind::Nominal => self.nominals.insert(n, v),
                        _ => self.conominals.insert(n, v),
                    };
                }
            }
        }
    }

    fn translate_ineq(&self, i: &Inequality) -> Inequality {
        i.substitute_atoms(AtomKind::Nominal, &self.nominals)
            .substitute_atoms(AtomKind::Conominal, &self.conominals)
    }

    fn translate(&self, q: &QuasiInequality) -> AlcState {
        AlcState::new(
            q.antecedent.iter().map(|i| self.translate_ineq(i)),
            self.translate_ineq(&q.consequent),
        )
    }

    fn index_of(&self, i: &Inequality) -> Result<usize, AlcError> {
        self.state()
            .assumptions
            .iter()
            .position(|a| a == i)
            .ok_or_else(|| AlcError::Mismatch {
                rule: "mirror".into(),
                reason: format!(
                    "`{}` is not an assumption of `{}`",
                    i.display_sequent(),
                    self.state()
                ),
            })
    }

    fn push(&mut self, action: AlcAction) -> Result<(), AlcError> {
        self.derivation.push(&action)?;
        Ok(())
    }

    fn push_on(
        &mut self,
        rule: AlcRule,
        reverse: bool,
        on: &Inequality,
        args: &[Name],
    ) -> Result<(), AlcError> {
        let mut a = AlcAction::new(rule).on(self.index_of(on)?);
        a.reverse = reverse;
        a.args.extend(args.iter().cloned());
        self.push(a)
    }

    /// Replay one ALBA step. Returns `false` for steps with no counterpart.
    fn replay(&mut self, step: &AlbaStep) -> Result<bool, AlcError> {
        self.bind_atoms(&step.state);
        let target = self.translate(&step.state);
        match &step.action {
            None => {
                let (s, t) = match (&step.state.consequent.lhs, &step.state.consequent.rhs) {
                    (l, Formula::Conominal(m)) => {
                        (self.translate_formula(l), self.conominals[m].clone())
                    }
                    _ => return Ok(false),
                };
                if let Formula::Var(s) = &s {
                    self.push(AlcAction::new(AlcRule::Ap1).with(s))?;
                }
                let Formula::Var(t) = t else {
                    unreachable!("conominals map to variables")
                };
                self.push(AlcAction::new(AlcRule::Ap2).with(&t))?;
            }
            Some(action) => {
                let op = action.operand.as_ref().map(|i| self.translate_ineq(i));
                use AlbaRule as R;
                match &action.rule {
                    R::DropTrivial => return Ok(false),
                    R::SplitMeet => {
                        self.push_on(AlcRule::AndS, false, op.as_ref().expect("operand"), &[])?
                    }
                    R::SplitJoin => {
                        self.push_on(AlcRule::OrS, false, op.as_ref().expect("operand"), &[])?
                    }
                    R::Residuate => {
                        self.push_on(AlcRule::RL1, false, op.as_ref().expect("operand"), &[])?
                    }
                    R::ResiduateLeftImp => {
                        self.push_on(AlcRule::RL2, false, op.as_ref().expect("operand"), &[])?
                    }
                    R::ResiduateProdRight => {
                        self.push_on(AlcRule::RL1, true, op.as_ref().expect("operand"), &[])?
                    }
                    R::ResiduateProdLeft => {
                        self.push_on(AlcRule::RL2, true, op.as_ref().expect("operand"), &[])?
                    }
                    R::ResiduateToLeftImp | R::ResiduateLeftImpToImp => {
                        let op = op.expect("operand");
                        let (first, second) = if action.rule == R::ResiduateToLeftImp {
                            (AlcRule::RL1, AlcRule::RL2)
                        } else {
                            (AlcRule::RL2, AlcRule::RL1)
                        };
                        let before = self.state().clone();
                        self.push_on(first, false, &op, &[])?;
                        let made = self
                            .state()
                            .assumptions
                            .difference(&before.assumptions)
                            .next()
                            .cloned()
                            .expect("residuation adds an assumption");
                        self.push_on(second, true, &made, &[])?;
                    }
                    R::ApproxImpFirst
                    | R::ApproxImpSecond
                    | R::ApproxProdFirst
                    | R::ApproxProdSecond => {
                        let op = op.expect("operand");
                        let fresh = self.introduced(step)?;
                        self.deep_approximation(&action.rule, &op, &action.position, fresh)?;
                    }
                    R::RightAckermann(p) => self.push(AlcAction::new(AlcRule::RAck).with(p))?,
                    R::LeftAckermann(p) => self.push(AlcAction::new(AlcRule::LAck).with(p))?,
                }
            }
        }
        if *self.state() != target {
            return Err(AlcError::Mismatch {
                rule: format!("mirror of {}", step.rule),
                reason: format!("have `{}`, expected `{target}`", self.state()),
            });
        }
        Ok(true)
    }

    fn translate_formula(&self, f: &Formula) -> Formula {
        f.substitute_atoms(AtomKind::Nominal, &self.nominals)
            .substitute_atoms(AtomKind::Conominal, &self.conominals)
    }

    /// The variable standing for the atom an approximation step introduced.
    fn introduced(&self, step: &AlbaStep) -> Result<Name, AlcError> {
        let current = self.state().vars();
        let target = self.translate(&step.state).vars();
        let new: Vec<&Name> = target.difference(&current).collect();
        match new.as_slice() {
            [v] => Ok((*v).clone()),
            _ => Err(AlcError::Mismatch {
                rule: step.rule.clone(),
                reason: "expected exactly one new atom".into(),
            }),
        }
    }

    /// Apply an approximation at `path` inside `op`: unfold the enclosing
    /// connectives into temporary variables, approximate, then fold back.
    fn deep_approximation(
        &mut self,
        rule: &AlbaRule,
        op: &Inequality,
        path: &[bool],
        fresh: Name,
    ) -> Result<(), AlcError> {
        let imp = matches!(rule, AlbaRule::ApproxImpFirst | AlbaRule::ApproxImpSecond);
        let mut current = op.clone();
        let mut temps = Vec::new();
        for &second in path {
            let t = self.fresh();
            let before = self.state().clone();
            let unfold = match (imp, second) {
                (true, _) => AlcRule::ImpAp2,
                (false, false) => AlcRule::ProdAp1,
                (false, true) => AlcRule::ProdAp2,
            };
            self.push_on(unfold, false, &current, std::slice::from_ref(&t))?;
            let tv = Formula::Var(t.clone());
            current = self
                .state()
                .assumptions
                .difference(&before.assumptions)
                .find(|a| if imp { a.rhs == tv } else { a.lhs == tv })
                .cloned()
                .expect("unfolding bounds the temporary");
            temps.push((unfold, t));
        }
        let at_node = match rule {
            AlbaRule::ApproxImpFirst => AlcRule::ImpAp1,
            AlbaRule::ApproxImpSecond => AlcRule::ImpAp2,
            AlbaRule::ApproxProdFirst => AlcRule::ProdAp1,
            _ => AlcRule::ProdAp2,
        };
        self.push_on(at_node, false, &current, &[fresh])?;
        for (unfold, t) in temps.into_iter().rev() {
            self.push(AlcAction::new(unfold).reversed().with(&t))?;
        }
        Ok(())
    }

    /// Fold conominal variables into their users, drop the goal
    /// approximation and residuate the goal.
    fn finish(&mut self) -> Result<(), AlcError> {
        let conominal_vars: BTreeSet<Name> =
            self.conominals.values().flat_map(|f| f.vars()).collect();
        'outer: loop {
            for n in &conominal_vars {
                if self.state().goal.vars().contains(n) {
                    continue;
                }
                if self.contract(n)? {
                    continue 'outer;
                }
            }
            break;
        }
        let st = self.state().clone();
        let ants: Vec<&Inequality> = st.assumptions.iter().collect();
        if let ([a], Formula::Var(_), Formula::Var(t)) =
            (ants.as_slice(), &st.goal.lhs, &st.goal.rhs)
        {
            if a.rhs == st.goal.rhs && !a.lhs.contains_var(t) {
                self.push(AlcAction::new(AlcRule::Ap2).reversed())?;
            }
        }
        while self.state().assumptions.is_empty()
            && matches!(self.state().goal.rhs, Formula::Imp(..))
        {
            self.push(AlcAction::new(AlcRule::RR1))?;
        }
        Ok(())
    }

    /// Fold `t |- n ; C[n] |- m` into `C[t] |- m` when `n` sits in nested
    /// second arguments of implications.
    fn contract(&mut self, n: &Name) -> Result<bool, AlcError> {
        let st = self.state().clone();
        let holders: Vec<&Inequality> = st
            .assumptions
            .iter()
            .filter(|a| a.vars().contains(n))
            .collect();
        let [x, y] = holders.as_slice() else {
            return Ok(false);
        };
        let nv = Formula::Var(n.clone());
        for (bound, user) in [(*x, *y), (*y, *x)] {
            if bound.rhs != nv || bound.lhs.contains_var(n) || !matches!(user.rhs, Formula::Var(_))
            {
                continue;
            }
            let Some(depth) = implication_depth(&user.lhs, n) else {
                continue;
            };
            let mut current = user.clone();
            let mut temps = Vec::new();
            for _ in 1..depth {
                let t = self.fresh();
                let before = self.state().clone();
                self.push_on(AlcRule::ImpAp2, false, &current, std::slice::from_ref(&t))?;
                let tv = Formula::Var(t.clone());
                current = self
                    .state()
                    .assumptions
                    .difference(&before.assumptions)
                    .find(|a| a.rhs == tv)
                    .cloned()
                    .expect("unfolding bounds the temporary");
                temps.push(t);
            }
            self.push(AlcAction::new(AlcRule::ImpAp2).reversed().with(n))?;
            for t in temps.into_iter().rev() {
                self.push(AlcAction::new(AlcRule::ImpAp2).reversed().with(&t))?;
            }
            return Ok(true);
        }
        Ok(false)
    }
}

/// Number of implications between the root of `f` and the only occurrence
/// of `n`, when every step goes through a second argument.
fn implication_depth(f: &Formula, n: &Name) -> Option<usize> {
    if f.count_var(n) != 1 {
        return None;
    }
    let mut depth = 0;
    let mut cur = f;
    loop {
        match cur {
            Formula::Imp(a, b) if !a.contains_var(n) => {
                depth += 1;
                cur = b;
            }
            Formula::Var(v) if v == n && depth > 0 => return Some(depth),
            _ => return None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alc::{canonical_product, parse_product, parse_si};
    use crate::axioms::Axiom;

    #[test]
    fn identity_needs_only_residuation() {
        let d = run_alc(&parse_si("q |- p -> p").unwrap()).unwrap().unwrap();
        assert_eq!(
            canonical_product(d.result().unwrap()),
            canonical_product(&parse_product("p * q |- p").unwrap())
        );
    }

    #[test]
    fn symmetry_has_no_product_correspondent() {
        assert!(run_alc(&Axiom::Sym.sequent()).unwrap().is_none());
    }

    #[test]
    fn depth_counts_second_arguments() {
        let f = parse_si("p -> (q -> r) |- r").unwrap().lhs;
        assert_eq!(implication_depth(&f, &Name::from("r")), Some(2));
        assert_eq!(implication_depth(&f, &Name::from("p")), None);
    }
}
