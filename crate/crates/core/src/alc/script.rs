//! A line-oriented format for derivations.
//!
//! ```text
//! # comment
//! derivation tr
//! start => p & (p -> q) |- q
//! step Ap1 s |- p & (p -> q) => s |- q     # recorded state, checked
//! apply AndS                                # computed state
//! apply RL1 @1                              # operand by index
//! apply ImpAp2 rev u                        # bottom-up, on variable u
//! state s |- p ; p * s |- q => s |- q       # assertion on the current state
//! end p * s |- (p * s) * s
//! ```

use super::check::check_step;
use super::rules::{AlcAction, AlcRule};
use super::{AlcDerivation, AlcError, AlcState, AlcStep};
use crate::syntax::{Inequality, Name};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptLine {
    Start(AlcState),
    Step { rule: AlcRule, state: AlcState },
    Apply(AlcAction),
    State(AlcState),
    End(Inequality),
}

/// One named derivation with the source line number of every entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcScript {
    pub name: String,
    pub lines: Vec<(usize, ScriptLine)>,
}

fn script_error(line: usize, message: impl Into<String>) -> AlcError {
    AlcError::Script {
        line,
        message: message.into(),
    }
}

fn parse_rule(line: usize, word: &str) -> Result<AlcRule, AlcError> {
    word.parse()
        .map_err(|e: super::rules::UnknownRule| script_error(line, e.to_string()))
}

fn parse_apply(line: usize, rest: &str) -> Result<AlcAction, AlcError> {
    let mut words = rest.split_whitespace();
    let rule = parse_rule(
        line,
        words
            .next()
            .ok_or_else(|| script_error(line, "missing rule"))?,
    )?;
    let mut action = AlcAction::new(rule);
    for w in words {
        if w == "rev" {
            action.reverse = true;
        } else if let Some(ix) = w.strip_prefix('@') {
            let ix = ix
                .parse()
                .map_err(|_| script_error(line, format!("bad operand `{w}`")))?;
            action.operands.push(ix);
        } else {
            action.args.push(Name::from(w));
        }
    }
    Ok(action)
}

/// Parse a file holding one or more derivations.
pub fn parse_script(text: &str) -> Result<Vec<AlcScript>, AlcError> {
    let mut scripts: Vec<AlcScript> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        if keyword == "derivation" {
            scripts.push(AlcScript {
                name: rest.to_string(),
                lines: Vec::new(),
            });
            continue;
        }
        let entry = match keyword {
            "start" => ScriptLine::Start(
                AlcState::parse(rest).map_err(|e| script_error(line, e.to_string()))?,
            ),
            "state" => ScriptLine::State(
                AlcState::parse(rest).map_err(|e| script_error(line, e.to_string()))?,
            ),
            "end" => ScriptLine::End(
                AlcState::parse(rest)
                    .map_err(|e| script_error(line, e.to_string()))?
                    .goal,
            ),
            "apply" => ScriptLine::Apply(parse_apply(line, rest)?),
            "step" => {
                let (word, state) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                ScriptLine::Step {
                    rule: parse_rule(line, word)?,
                    state: AlcState::parse(state).map_err(|e| script_error(line, e.to_string()))?,
                }
            }
            other => return Err(script_error(line, format!("unknown keyword `{other}`"))),
        };
        let script = scripts
            .last_mut()
            .ok_or_else(|| script_error(line, "entry before any `derivation` line"))?;
        script.lines.push((line, entry));
    }
    Ok(scripts)
}

/// Build the derivation a script describes. Recorded steps are checked
/// against the rules, computed steps are applied, and assertions compared.
pub fn replay_script(script: &AlcScript) -> Result<AlcDerivation, AlcError> {
    let mut d: Option<AlcDerivation> = None;
    for (line, entry) in &script.lines {
        let line = *line;
        if let ScriptLine::Start(st) = entry {
            if d.is_some() {
                return Err(script_error(line, "second `start`"));
            }
            let mut fresh = AlcDerivation::new(st.clone());
            fresh.name = Some(script.name.clone());
            d = Some(fresh);
            continue;
        }
        let d = d
            .as_mut()
            .ok_or_else(|| script_error(line, "missing `start`"))?;
        match entry {
            ScriptLine::Start(_) => unreachable!("handled above"),
            ScriptLine::Step { rule, state } => {
                let used = d.used_vars();
                check_step(d.last(), *rule, state, &used).map_err(|e| script_error(line, e))?;
                d.steps.push(AlcStep {
                    rule: *rule,
                    reverse: false,
                    operand: String::new(),
                    state: state.clone(),
                });
            }
            ScriptLine::Apply(action) => {
                d.push(action)
                    .map_err(|e| script_error(line, e.to_string()))?;
            }
            ScriptLine::State(st) => {
                if d.last() != st {
                    return Err(script_error(
                        line,
                        format!("expected `{st}`, have `{}`", d.last()),
                    ));
                }
            }
            ScriptLine::End(goal) => {
                if d.result() != Some(goal) {
                    return Err(script_error(
                        line,
                        format!("expected `{goal}`, have `{}`", d.last()),
                    ));
                }
            }
        }
    }
    d.ok_or_else(|| script_error(0, format!("derivation `{}` has no `start`", script.name)))
}
