//! Single ALBA rule applications on a system of inequalities.

use std::collections::BTreeMap;
use std::fmt;

use super::{occurrence_signs, AlbaAction, AlbaError, AlbaState};
use crate::syntax::{Formula, Inequality, Name};

/// The rules of the calculus. Approximation rules act on the node at the
/// path given to [`apply_rule`]; the Ackermann rules act on the whole
/// system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlbaRule {
    /// Remove `a <= top`, `bot <= a` or `a <= a`.
    DropTrivial,
    /// `l <= a & b` becomes `l <= a` and `l <= b`.
    SplitMeet,
    /// `a | b <= r` becomes `a <= r` and `b <= r`.
    SplitJoin,
    /// `l <= a -> b` becomes `a * l <= b`.
    Residuate,
    /// `l <= a -> b` becomes `a <= b <- l`.
    ResiduateToLeftImp,
    /// `l <= a <- b` becomes `l * b <= a`.
    ResiduateLeftImp,
    /// `l <= a <- b` becomes `b <= l -> a`.
    ResiduateLeftImpToImp,
    /// `a * b <= r` becomes `b <= a -> r`.
    ResiduateProdRight,
    /// `a * b <= r` becomes `a <= r <- b`.
    ResiduateProdLeft,
    /// `C[a -> b] <= m` becomes `j <= a` and `C[j -> b] <= m`.
    ApproxImpFirst,
    /// `C[a -> b] <= m` becomes `b <= n` and `C[a -> n] <= m`.
    ApproxImpSecond,
    /// `i <= C[a * b]` becomes `j <= a` and `i <= C[j * b]`.
    ApproxProdFirst,
    /// `i <= C[a * b]` becomes `j <= b` and `i <= C[a * j]`.
    ApproxProdSecond,
    /// Eliminate a variable whose critical occurrences are all of the form
    /// `alpha <= p`.
    RightAckermann(Name),
    /// Eliminate a variable whose critical occurrences are all of the form
    /// `p <= alpha`.
    LeftAckermann(Name),
}

impl fmt::Display for AlbaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlbaRule::DropTrivial => f.write_str("drop-trivial"),
            AlbaRule::SplitMeet => f.write_str("split-meet"),
            AlbaRule::SplitJoin => f.write_str("split-join"),
            AlbaRule::Residuate => f.write_str("residuation-imp"),
            AlbaRule::ResiduateToLeftImp => f.write_str("residuation-imp-left"),
            AlbaRule::ResiduateLeftImp => f.write_str("residuation-limp"),
            AlbaRule::ResiduateLeftImpToImp => f.write_str("residuation-limp-right"),
            AlbaRule::ResiduateProdRight => f.write_str("residuation-prod-right"),
            AlbaRule::ResiduateProdLeft => f.write_str("residuation-prod-left"),
            AlbaRule::ApproxImpFirst => f.write_str("approximation-imp-first"),
            AlbaRule::ApproxImpSecond => f.write_str("approximation-imp-second"),
            AlbaRule::ApproxProdFirst => f.write_str("approximation-prod-first"),
            AlbaRule::ApproxProdSecond => f.write_str("approximation-prod-second"),
            AlbaRule::RightAckermann(p) => write!(f, "right-ackermann {p}"),
            AlbaRule::LeftAckermann(p) => write!(f, "left-ackermann {p}"),
        }
    }
}

fn mismatch(rule: &AlbaRule, operand: &Inequality, reason: &str) -> AlbaError {
    AlbaError::PatternMismatch {
        rule: rule.to_string(),
        operand: operand.to_string(),
        reason: reason.to_string(),
    }
}

fn args(f: &Formula) -> (Formula, Formula) {
    let (a, b) = f.children().expect("binary node");
    (a.clone(), b.clone())
}

/// Apply `rule` to `operand` (ignored by the Ackermann rules), returning
/// the new system with the step appended to its trace.
pub fn apply_rule(
    state: &AlbaState,
    rule: &AlbaRule,
    operand: Option<&Inequality>,
    position: &[bool],
) -> Result<AlbaState, AlbaError> {
    let mut st = state.clone();
    let action = Some(AlbaAction {
        rule: rule.clone(),
        operand: operand.cloned(),
        position: position.to_vec(),
    });
    let (operand_text, replacement): (String, Vec<Inequality>) = match rule {
        AlbaRule::RightAckermann(p) => {
            ackermann(&mut st, p, true)?;
            st.record(&rule.to_string(), p.to_string(), action);
            return Ok(st);
        }
        AlbaRule::LeftAckermann(p) => {
            ackermann(&mut st, p, false)?;
            st.record(&rule.to_string(), p.to_string(), action);
            return Ok(st);
        }
        _ => {
            let op = operand.ok_or_else(|| AlbaError::OperandNotInState(String::new()))?;
            if !st.inequalities.contains(op) {
                return Err(AlbaError::OperandNotInState(op.to_string()));
            }
            (op.to_string(), rewrite(&mut st, rule, op, position)?)
        }
    };
    let op = operand.expect("checked above");
    let ix = st
        .inequalities
        .iter()
        .position(|i| i == op)
        .expect("operand present");
    st.inequalities.remove(ix);
    let mut at = ix;
    for r in replacement {
        if !st.inequalities.contains(&r) {
            st.inequalities.insert(at, r);
            at += 1;
        }
    }
    st.record(&rule.to_string(), operand_text, action);
    Ok(st)
}

fn rewrite(
    st: &mut AlbaState,
    rule: &AlbaRule,
    op: &Inequality,
    path: &[bool],
) -> Result<Vec<Inequality>, AlbaError> {
    let (l, r) = (&op.lhs, &op.rhs);
    let out = match rule {
        AlbaRule::DropTrivial => {
            if l == r || *r == Formula::Top || *l == Formula::Bot {
                vec![]
            } else {
                return Err(mismatch(rule, op, "not trivially true"));
            }
        }
        AlbaRule::SplitMeet => match r {
            Formula::And(a, b) => vec![
                Inequality::new(l.clone(), (**a).clone()),
                Inequality::new(l.clone(), (**b).clone()),
            ],
            _ => return Err(mismatch(rule, op, "right side is not a meet")),
        },
        AlbaRule::SplitJoin => match l {
            Formula::Or(a, b) => vec![
                Inequality::new((**a).clone(), r.clone()),
                Inequality::new((**b).clone(), r.clone()),
            ],
            _ => return Err(mismatch(rule, op, "left side is not a join")),
        },
        AlbaRule::Residuate | AlbaRule::ResiduateToLeftImp => match r {
            Formula::Imp(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                if *rule == AlbaRule::Residuate {
                    vec![Inequality::new(Formula::prod(a, l.clone()), b)]
                } else {
                    vec![Inequality::new(a, Formula::limp(b, l.clone()))]
                }
            }
            _ => return Err(mismatch(rule, op, "right side is not an implication")),
        },
        AlbaRule::ResiduateLeftImp | AlbaRule::ResiduateLeftImpToImp => match r {
            Formula::LImp(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                if *rule == AlbaRule::ResiduateLeftImp {
                    vec![Inequality::new(Formula::prod(l.clone(), b), a)]
                } else {
                    vec![Inequality::new(b, Formula::imp(l.clone(), a))]
                }
            }
            _ => return Err(mismatch(rule, op, "right side is not a left implication")),
        },
        AlbaRule::ResiduateProdRight | AlbaRule::ResiduateProdLeft => match l {
            Formula::Prod(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                if *rule == AlbaRule::ResiduateProdRight {
                    vec![Inequality::new(b, Formula::imp(a, r.clone()))]
                } else {
                    vec![Inequality::new(a, Formula::limp(r.clone(), b))]
                }
            }
            _ => return Err(mismatch(rule, op, "left side is not a product")),
        },
        AlbaRule::ApproxImpFirst | AlbaRule::ApproxImpSecond => {
            if !matches!(r, Formula::Conominal(_)) {
                return Err(mismatch(rule, op, "right side is not a conominal"));
            }
            if path.iter().any(|second| !second) {
                return Err(mismatch(rule, op, "path leaves the second arguments"));
            }
            for k in 0..path.len() {
                if !matches!(l.at_path(&path[..k]), Some(Formula::Imp(..))) {
                    return Err(mismatch(rule, op, "path leaves the implications"));
                }
            }
            let node = match l.at_path(path) {
                Some(n @ Formula::Imp(..)) => n.clone(),
                _ => return Err(mismatch(rule, op, "no implication at the position")),
            };
            let (a, b) = args(&node);
            if *rule == AlbaRule::ApproxImpFirst {
                let j = st.fresh_nominal();
                let lhs = l
                    .replace_at(path, Formula::imp(j.clone(), b))
                    .expect("path checked");
                vec![Inequality::new(lhs, r.clone()), Inequality::new(j, a)]
            } else {
                let n = st.fresh_conominal();
                let lhs = l
                    .replace_at(path, Formula::imp(a, n.clone()))
                    .expect("path checked");
                vec![Inequality::new(lhs, r.clone()), Inequality::new(b, n)]
            }
        }
        AlbaRule::ApproxProdFirst | AlbaRule::ApproxProdSecond => {
            if !matches!(l, Formula::Nominal(_)) {
                return Err(mismatch(rule, op, "left side is not a nominal"));
            }
            for k in 0..=path.len() {
                if !matches!(r.at_path(&path[..k]), Some(Formula::Prod(..))) {
                    return Err(mismatch(rule, op, "path leaves the products"));
                }
            }
            let (a, b) = args(r.at_path(path).expect("checked"));
            let j = st.fresh_nominal();
            let (node, side) = if *rule == AlbaRule::ApproxProdFirst {
                (Formula::prod(j.clone(), b), Inequality::new(j, a))
            } else {
                (Formula::prod(a, j.clone()), Inequality::new(j, b))
            };
            let rhs = r.replace_at(path, node).expect("path checked");
            vec![Inequality::new(l.clone(), rhs), side]
        }
        AlbaRule::RightAckermann(_) | AlbaRule::LeftAckermann(_) => unreachable!(),
    };
    Ok(out)
}

/// The right (`right = true`) or left Ackermann rule for `p`.
fn ackermann(st: &mut AlbaState, p: &Name, right: bool) -> Result<(), AlbaError> {
    let fail = |reason: &str| AlbaError::Polarity {
        var: p.clone(),
        reason: reason.to_string(),
    };
    let mut bounds = Vec::new();
    let mut rest = Vec::new();
    for ineq in &st.inequalities {
        let (isolated, other) = if right {
            (&ineq.rhs, &ineq.lhs)
        } else {
            (&ineq.lhs, &ineq.rhs)
        };
        if matches!(isolated, Formula::Var(v) if v == p) && !other.contains_var(p) {
            bounds.push(other.clone());
        } else {
            rest.push(ineq.clone());
        }
    }
    for ineq in &rest {
        let (plus, minus) = occurrence_signs(ineq, p);
        let bad = if right { plus } else { minus };
        if bad {
            return Err(fail(&format!(
                "`{ineq}` has an occurrence of the wrong sign"
            )));
        }
    }
    if st.goal.lhs.contains_var(p) || st.goal.rhs.contains_var(p) {
        return Err(fail("the goal mentions the variable"));
    }
    let value = if right {
        Formula::join_all(bounds)
    } else {
        Formula::meet_all(bounds)
    };
    let binding: BTreeMap<Name, Formula> = [(p.clone(), value)].into_iter().collect();
    let mut out: Vec<Inequality> = Vec::new();
    for ineq in rest {
        let next = ineq.substitute(&binding);
        if !out.contains(&next) {
            out.push(next);
        }
    }
    st.inequalities = out;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::first_approximation;
    use super::*;
    use crate::syntax::{parse_inequality, Language};

    fn ineq(text: &str) -> Inequality {
        parse_inequality(text, Language::LambekCalculusPlus).unwrap()
    }

    fn state(items: &[&str]) -> AlbaState {
        let mut st = first_approximation(&ineq("p <= p"));
        st.inequalities = items.iter().map(|t| ineq(t)).collect();
        st
    }

    #[test]
    fn residuation_and_splitting() {
        let st = state(&["j:i0 <= p -> q", "r <= p & q"]);
        let a = apply_rule(
            &st,
            &AlbaRule::Residuate,
            Some(&ineq("j:i0 <= p -> q")),
            &[],
        )
        .unwrap();
        assert_eq!(a.inequalities[0], ineq("p * j:i0 <= q"));
        let b = apply_rule(&a, &AlbaRule::SplitMeet, Some(&ineq("r <= p & q")), &[]).unwrap();
        assert_eq!(&b.inequalities[1..], &[ineq("r <= p"), ineq("r <= q")]);
        assert!(apply_rule(&st, &AlbaRule::SplitJoin, Some(&ineq("r <= p & q")), &[]).is_err());
        assert!(matches!(
            apply_rule(&st, &AlbaRule::Residuate, Some(&ineq("p <= q")), &[]),
            Err(AlbaError::OperandNotInState(_))
        ));
    }

    #[test]
    fn approximation_respects_the_position() {
        let st = state(&["(r -> p) -> (r -> q) <= m:m0"]);
        let op = ineq("(r -> p) -> (r -> q) <= m:m0");
        let a = apply_rule(&st, &AlbaRule::ApproxImpFirst, Some(&op), &[true]).unwrap();
        assert_eq!(a.inequalities[0], ineq("(r -> p) -> (j:j -> q) <= m:m0"));
        assert_eq!(a.inequalities[1], ineq("j:j <= r"));
        assert!(apply_rule(&st, &AlbaRule::ApproxImpFirst, Some(&op), &[false]).is_err());
        let b = apply_rule(&st, &AlbaRule::ApproxImpSecond, Some(&op), &[]).unwrap();
        assert_eq!(b.inequalities[1], ineq("r -> q <= m:n"));
    }

    #[test]
    fn ackermann_substitutes_the_join_of_bounds() {
        let st = state(&["j:j <= p", "j:k <= p", "p * j:i0 <= q"]);
        let a = apply_rule(&st, &AlbaRule::RightAckermann("p".into()), None, &[]).unwrap();
        assert_eq!(a.inequalities, vec![ineq("(j:j | j:k) * j:i0 <= q")]);
        let bad = state(&["j:j <= p", "j:i0 <= q -> p"]);
        assert!(matches!(
            apply_rule(&bad, &AlbaRule::RightAckermann("p".into()), None, &[]),
            Err(AlbaError::Polarity { .. })
        ));
        let left = state(&["r <= m:n", "r -> m:n <= m:m0"]);
        let b = apply_rule(&left, &AlbaRule::LeftAckermann("r".into()), None, &[]).unwrap();
        assert_eq!(b.inequalities, vec![ineq("m:n -> m:n <= m:m0")]);
    }
}
