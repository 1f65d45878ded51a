//! Independent validation of recorded derivations.

use std::collections::BTreeSet;

use thiserror::Error;

use super::rules::{alc_apply, AlcAction, AlcRule};
use super::{AlcDerivation, AlcState};
use crate::alba::permutations;
use crate::syntax::Name;

const MAX_RENAMED: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct IllegalStep {
    /// One-based index of the offending step.
    pub step: usize,
    pub reason: String,
}

/// Every action of `rule` worth trying on `before` when the expected result
/// is `after`.
fn candidate_actions(before: &AlcState, rule: AlcRule, after: &AlcState) -> Vec<AlcAction> {
    let n = before.assumptions.len();
    let new_vars: Vec<Name> = after.vars().difference(&before.vars()).cloned().collect();
    let old_vars: Vec<Name> = before.vars().into_iter().collect();
    let mut out = Vec::new();
    match rule {
        AlcRule::Rename => {
            let from: Vec<Name> = before.vars().difference(&after.vars()).cloned().collect();
            if from.len() == new_vars.len() && from.len() <= MAX_RENAMED {
                for order in permutations(&new_vars, usize::MAX) {
                    let mut a = AlcAction::new(rule);
                    for (x, y) in from.iter().zip(&order) {
                        a.args.push(x.clone());
                        a.args.push(y.clone());
                    }
                    if !a.args.is_empty() {
                        out.push(a);
                    }
                }
            }
        }
        AlcRule::RAck | AlcRule::LAck => {
            for v in &old_vars {
                out.push(AlcAction::new(rule).with(v));
            }
        }
        _ => {
            let forward_args: Vec<Vec<Name>> = if rule.introduces_variable() {
                new_vars.iter().map(|v| vec![v.clone()]).collect()
            } else {
                vec![Vec::new()]
            };
            let operands: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).chain([Vec::new()]).collect();
            for args in &forward_args {
                for ops in &operands {
                    out.push(AlcAction {
                        rule,
                        reverse: false,
                        operands: ops.clone(),
                        args: args.clone(),
                    });
                }
            }
            match rule {
                AlcRule::AndS | AlcRule::OrS => {
                    for i in 0..n {
                        for j in 0..n {
                            if i != j {
                                out.push(AlcAction::new(rule).reversed().on(i).on(j));
                            }
                        }
                    }
                }
                AlcRule::RL1 | AlcRule::RL2 => {
                    for i in 0..n {
                        out.push(AlcAction::new(rule).reversed().on(i));
                    }
                }
                AlcRule::RR1 | AlcRule::RR2 | AlcRule::Ap1 | AlcRule::Ap2 => {
                    out.push(AlcAction::new(rule).reversed());
                }
                _ => {
                    for v in &old_vars {
                        out.push(AlcAction::new(rule).reversed().with(v));
                    }
                }
            }
        }
    }
    out
}

/// Check that `after` follows from `before` by one application of `rule`,
/// in either direction. `used` holds every variable seen earlier in the
/// derivation.
pub fn check_step(
    before: &AlcState,
    rule: AlcRule,
    after: &AlcState,
    used: &BTreeSet<Name>,
) -> Result<(), String> {
    let mut last_error = None;
    for action in candidate_actions(before, rule, after) {
        match alc_apply(before, &action, used) {
            Ok(next) if next == *after => return Ok(()),
            Ok(_) => {}
            Err(e) => last_error = Some(e.to_string()),
        }
    }
    Err(match last_error {
        Some(e) => format!("{rule} does not yield `{after}` ({e})"),
        None => format!("{rule} does not yield `{after}`"),
    })
}

/// Check every step of a derivation, tracking the variables used so far.
pub fn check_derivation(d: &AlcDerivation) -> Result<(), IllegalStep> {
    let mut used = d.start.vars();
    let mut before = &d.start;
    for (k, step) in d.steps.iter().enumerate() {
        check_step(before, step.rule, &step.state, &used).map_err(|reason| IllegalStep {
            step: k + 1,
            reason,
        })?;
        used.extend(step.state.vars());
        before = &step.state;
    }
    Ok(())
}
