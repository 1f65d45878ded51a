//! A supersequent calculus computing product-language correspondents of
//! strict implication sequents. Every rule is invertible; a derivation from
//! `=> a |- b` to `=> c |- d` shows that the two sequents define the same
//! class of residuated groupoids.

mod check;
mod rules;
mod script;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::alba::canonical_text;
use crate::syntax::{
    parse_inequality, parse_quasi, Formula, Inequality, Language, Name, QuasiInequality,
    SyntaxError,
};

pub use check::{check_derivation, check_step, IllegalStep};
pub use rules::{alc_apply, AlcAction, AlcRule};
pub use script::{parse_script, replay_script, AlcScript, ScriptLine};
pub use search::{run_alc, run_alc_with, AlcOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlcError {
    #[error("{rule} does not apply: {reason}")]
    Mismatch { rule: String, reason: String },
    #[error("variable `{0}` is not fresh")]
    NotFresh(Name),
    #[error("{rule} side condition fails for `{var}`: {reason}")]
    SideCondition {
        rule: String,
        var: Name,
        reason: String,
    },
    #[error("assumption index {0} out of range")]
    BadOperand(usize),
    #[error("`{0}` may not contain nominals or conominals")]
    NotPlain(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("script line {line}: {message}")]
    Script { line: usize, message: String },
}

/// A supersequent `assumptions => goal` over plain propositional variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlcState {
    pub assumptions: BTreeSet<Inequality>,
    pub goal: Inequality,
}

impl AlcState {
    pub fn new(assumptions: impl IntoIterator<Item = Inequality>, goal: Inequality) -> Self {
        AlcState {
            assumptions: assumptions.into_iter().collect(),
            goal,
        }
    }

    /// The initial state `=> lhs |- rhs`.
    pub fn initial(seq: &Inequality) -> Self {
        AlcState::new([], seq.clone())
    }

    /// Parse `a |- b ; c |- d => e |- f` (or a bare sequent).
    pub fn parse(text: &str) -> Result<Self, AlcError> {
        let text = text.trim();
        let text = text.strip_prefix("=>").unwrap_or(text);
        let q = parse_quasi(text)?;
        let st = AlcState::new(q.antecedent, q.consequent);
        for i in st.all() {
            if !i.lhs.in_language(Language::LambekCalculus)
                || !i.rhs.in_language(Language::LambekCalculus)
            {
                return Err(AlcError::NotPlain(i.to_string()));
            }
        }
        Ok(st)
    }

    pub fn all(&self) -> impl Iterator<Item = &Inequality> {
        self.assumptions.iter().chain(std::iter::once(&self.goal))
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        self.all().flat_map(|i| i.vars()).collect()
    }

    /// A finished state: no assumptions and a goal built from products,
    /// variables and constants.
    pub fn is_product_sequent(&self) -> bool {
        self.assumptions.is_empty()
            && self.goal.lhs.in_language(Language::Product)
            && self.goal.rhs.in_language(Language::Product)
    }
}

impl fmt::Display for AlcState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ants: Vec<String> = self
            .assumptions
            .iter()
            .map(|i| i.display_sequent())
            .collect();
        if !ants.is_empty() {
            write!(f, "{} ", ants.join(" ; "))?;
        }
        write!(f, "=> {}", self.goal.display_sequent())
    }
}

/// One step of a derivation and the state it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcStep {
    #[serde(serialize_with = "display_str")]
    pub rule: AlcRule,
    pub reverse: bool,
    pub operand: String,
    #[serde(serialize_with = "display_str")]
    pub state: AlcState,
}

/// A sequence of states linked by rule applications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcDerivation {
    pub name: Option<String>,
    #[serde(serialize_with = "display_str")]
    pub start: AlcState,
    pub steps: Vec<AlcStep>,
}

fn display_str<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl AlcDerivation {
    pub fn new(start: AlcState) -> Self {
        AlcDerivation {
            name: None,
            start,
            steps: Vec::new(),
        }
    }

    pub fn last(&self) -> &AlcState {
        self.steps.last().map_or(&self.start, |s| &s.state)
    }

    /// Every variable mentioned so far, for freshness checks.
    pub fn used_vars(&self) -> BTreeSet<Name> {
        let mut used = self.start.vars();
        for s in &self.steps {
            used.extend(s.state.vars());
        }
        used
    }

    /// Apply an action to the last state and record it.
    pub fn push(&mut self, action: &AlcAction) -> Result<&AlcState, AlcError> {
        let used = self.used_vars();
        let next = alc_apply(self.last(), action, &used)?;
        self.steps.push(AlcStep {
            rule: action.rule,
            reverse: action.reverse,
            operand: action.describe(),
            state: next,
        });
        Ok(self.last())
    }

    /// The final sequent when the derivation ends in a product sequent.
    pub fn result(&self) -> Option<&Inequality> {
        let last = self.last();
        last.is_product_sequent().then_some(&last.goal)
    }

    /// Human-readable listing, one state per line.
    pub fn render(&self) -> String {
        let mut out = format!("   {}\n", self.start);
        for s in &self.steps {
            let rev = if s.reverse { " rev" } else { "" };
            out.push_str(&format!("{}{}: {}\n", s.rule, rev, s.state));
        }
        out
    }
}

/// Parse a sequent of the product language.
pub fn parse_product(text: &str) -> Result<Inequality, AlcError> {
    Ok(parse_inequality(text, Language::Product)?)
}

/// Printed normal form of a product sequent up to renaming of variables.
pub fn canonical_product(seq: &Inequality) -> String {
    let binding: BTreeMap<Name, Formula> = seq
        .vars()
        .into_iter()
        .map(|v| (v.clone(), Formula::Nominal(v)))
        .collect();
    canonical_text(&QuasiInequality::new([], seq.substitute(&binding)))
}

/// Parse a sequent of the strict implication language for [`run_alc`].
pub fn parse_si(text: &str) -> Result<Inequality, AlcError> {
    Ok(parse_inequality(text, Language::StrictImplication)?)
}
