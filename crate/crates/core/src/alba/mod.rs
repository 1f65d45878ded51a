//! The ALBA reduction of strict implication inequalities to pure
//! quasi-inequalities over nominals and conominals.

mod normalize;
mod rules;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

pub use normalize::{canonical_text, normalize_result};
pub use rules::{apply_rule, AlbaRule};

use crate::classify::{
    all_certificates, guiding_certificate, ClassifyError, Epsilon, InductiveCertificate,
};
use crate::syntax::{AtomKind, Formula, Inequality, Language, Name, Polarity, QuasiInequality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlbaError {
    #[error("`{0}` is not a strict implication inequality")]
    NotStrictImplication(String),
    #[error("rule {rule} does not match `{operand}`: {reason}")]
    PatternMismatch {
        rule: String,
        operand: String,
        reason: String,
    },
    #[error("`{0}` is not in the current system")]
    OperandNotInState(String),
    #[error("Ackermann side condition fails for `{var}`: {reason}")]
    Polarity { var: Name, reason: String },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Tuning knobs for [`run_alba`].
#[derive(Clone, Debug)]
pub struct AlbaOptions {
    /// Replace variables occurring with a single polarity by `bot` or `top`
    /// during preprocessing.
    pub eliminate_single_polarity: bool,
    /// Bound on reduction steps per system.
    pub max_steps: usize,
    /// Bound on elimination orders tried when no certificate is available.
    pub max_attempts: usize,
}

impl Default for AlbaOptions {
    fn default() -> Self {
        AlbaOptions {
            eliminate_single_polarity: false,
            max_steps: 30,
            max_attempts: 720,
        }
    }
}

/// One recorded rule application and the system it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlbaStep {
    pub rule: String,
    pub operand: String,
    #[serde(serialize_with = "serialize_display")]
    pub state: QuasiInequality,
    /// The rule application itself; `None` for the first approximation.
    #[serde(skip)]
    pub action: Option<AlbaAction>,
}

/// A rule together with the operand and position it was applied at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbaAction {
    pub rule: AlbaRule,
    pub operand: Option<Inequality>,
    pub position: Vec<bool>,
}

fn serialize_display<S: serde::Serializer>(q: &QuasiInequality, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// A system of inequalities with the goal `i0 <= m0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbaState {
    pub inequalities: Vec<Inequality>,
    pub goal: Inequality,
    pub trace: Vec<AlbaStep>,
    used: BTreeSet<Name>,
    nominal_counter: usize,
    conominal_counter: usize,
}

const NOMINAL_STEMS: [&str; 4] = ["j", "k", "l", "i"];
const CONOMINAL_STEMS: [&str; 2] = ["n", "m"];

impl AlbaState {
    fn new(inequalities: Vec<Inequality>, goal: Inequality) -> AlbaState {
        let mut used = BTreeSet::new();
        for i in inequalities.iter().chain(std::iter::once(&goal)) {
            for kind in [AtomKind::Var, AtomKind::Nominal, AtomKind::Conominal] {
                used.extend(i.atoms(kind));
            }
        }
        AlbaState {
            inequalities,
            goal,
            trace: Vec::new(),
            used,
            nominal_counter: 0,
            conominal_counter: 0,
        }
    }

    /// The system read as a quasi-inequality.
    pub fn as_quasi(&self) -> QuasiInequality {
        QuasiInequality::new(self.inequalities.iter().cloned(), self.goal.clone())
    }

    /// Propositional variables still present.
    pub fn vars(&self) -> BTreeSet<Name> {
        self.inequalities.iter().flat_map(|i| i.vars()).collect()
    }

    fn fresh(&mut self, stems: &[&str], nominal: bool) -> Name {
        loop {
            let counter = if nominal {
                &mut self.nominal_counter
            } else {
                &mut self.conominal_counter
            };
            let k = *counter;
            *counter += 1;
            let stem = stems[k % stems.len()];
            let round = k / stems.len();
            let name = if round == 0 {
                stem.to_string()
            } else {
                format!("{stem}{round}")
            };
            let name = Name::from(name.as_str());
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }

    pub(crate) fn fresh_nominal(&mut self) -> Formula {
        Formula::Nominal(self.fresh(&NOMINAL_STEMS, true))
    }

    pub(crate) fn fresh_conominal(&mut self) -> Formula {
        Formula::Conominal(self.fresh(&CONOMINAL_STEMS, false))
    }

    fn record(&mut self, rule: &str, operand: String, action: Option<AlbaAction>) {
        let state = self.as_quasi();
        self.trace.push(AlbaStep {
            rule: rule.to_string(),
            operand,
            state,
            action,
        });
    }
}

/// Outcome of [`run_alba`].
#[derive(Clone, Debug)]
pub enum AlbaResult {
    Success {
        preprocessed: Vec<Inequality>,
        outputs: Vec<QuasiInequality>,
        traces: Vec<Vec<AlbaStep>>,
    },
    Failure(Box<AlbaState>),
}

impl AlbaResult {
    pub fn outputs(&self) -> Option<&[QuasiInequality]> {
        match self {
            AlbaResult::Success { outputs, .. } => Some(outputs),
            AlbaResult::Failure(_) => None,
        }
    }
}

fn check_si(ineq: &Inequality) -> Result<(), AlbaError> {
    if ineq.lhs.in_language(Language::StrictImplication)
        && ineq.rhs.in_language(Language::StrictImplication)
    {
        Ok(())
    } else {
        Err(AlbaError::NotStrictImplication(ineq.to_string()))
    }
}

/// Distribution and splitting in the skeleton, then (optionally) the
/// elimination of variables occurring with a single polarity.
pub fn preprocess(ineq: &Inequality) -> Result<Vec<Inequality>, AlbaError> {
    preprocess_with(ineq, &AlbaOptions::default())
}

pub fn preprocess_with(
    ineq: &Inequality,
    opts: &AlbaOptions,
) -> Result<Vec<Inequality>, AlbaError> {
    check_si(ineq)?;
    let distributed = Inequality::new(distribute(&ineq.lhs, true), distribute(&ineq.rhs, false));
    let mut out = Vec::new();
    for piece in split_all(distributed) {
        let piece = if opts.eliminate_single_polarity {
            eliminate_single_polarity(&piece)
        } else {
            piece
        };
        if !out.contains(&piece) {
            out.push(piece);
        }
    }
    Ok(out)
}

/// Push positive meets below positive joins (and dually) and distribute
/// negative implications over their arguments, staying in the skeleton.
fn distribute(f: &Formula, positive: bool) -> Formula {
    let Some((a, b)) = f.children() else {
        return f.clone();
    };
    match f {
        Formula::And(..) | Formula::Or(..) => {
            let (a, b) = (distribute(a, positive), distribute(b, positive));
            let is_and = matches!(f, Formula::And(..));
            // Positive meets over joins; negative joins over meets.
            if is_and == positive {
                let inner_join = |x: &Formula| {
                    if positive {
                        matches!(x, Formula::Or(..))
                    } else {
                        matches!(x, Formula::And(..))
                    }
                };
                let rebuild = |x: Formula, y: Formula| {
                    if positive {
                        Formula::and(x, y)
                    } else {
                        Formula::or(x, y)
                    }
                };
                let combine = |x: Formula, y: Formula| {
                    if positive {
                        Formula::or(x, y)
                    } else {
                        Formula::and(x, y)
                    }
                };
                if inner_join(&a) {
                    let (x, y) = a.children().expect("binary");
                    let (x, y) = (x.clone(), y.clone());
                    return distribute(&combine(rebuild(x, b.clone()), rebuild(y, b)), positive);
                }
                if inner_join(&b) {
                    let (x, y) = b.children().expect("binary");
                    let (x, y) = (x.clone(), y.clone());
                    return distribute(&combine(rebuild(a.clone(), x), rebuild(a, y)), positive);
                }
            }
            f.with_children(a, b)
        }
        Formula::Imp(..) if !positive => {
            let (a, b) = (distribute(a, true), distribute(b, false));
            if let Formula::Or(x, y) = &a {
                let (x, y) = ((**x).clone(), (**y).clone());
                return distribute(
                    &Formula::and(Formula::imp(x, b.clone()), Formula::imp(y, b)),
                    false,
                );
            }
            if let Formula::And(x, y) = &b {
                let (x, y) = ((**x).clone(), (**y).clone());
                return distribute(
                    &Formula::and(Formula::imp(a.clone(), x), Formula::imp(a, y)),
                    false,
                );
            }
            Formula::imp(a, b)
        }
        // Positive implications are PIA nodes: nothing below them moves.
        _ => f.clone(),
    }
}

fn split_all(ineq: Inequality) -> Vec<Inequality> {
    match (&ineq.lhs, &ineq.rhs) {
        (_, Formula::And(a, b)) => {
            let mut out = split_all(Inequality::new(ineq.lhs.clone(), (**a).clone()));
            out.extend(split_all(Inequality::new(ineq.lhs.clone(), (**b).clone())));
            out
        }
        (Formula::Or(a, b), _) => {
            let mut out = split_all(Inequality::new((**a).clone(), ineq.rhs.clone()));
            out.extend(split_all(Inequality::new((**b).clone(), ineq.rhs.clone())));
            out
        }
        _ => vec![ineq],
    }
}

fn eliminate_single_polarity(ineq: &Inequality) -> Inequality {
    let mut cur = ineq.clone();
    for v in ineq.vars() {
        let (plus, minus) = occurrence_signs(&cur, &v);
        let replacement = match (plus, minus) {
            (false, true) => Formula::Bot,
            (true, false) => Formula::Top,
            _ => continue,
        };
        let mut binding = BTreeMap::new();
        binding.insert(v, replacement);
        cur = cur.substitute(&binding);
    }
    cur
}

/// The initial system `{i0 <= lhs, rhs <= m0}` with goal `i0 <= m0`; when
/// the left side is `top` the system is `{rhs <= m0}` with goal `top <= m0`.
pub fn first_approximation(ineq: &Inequality) -> AlbaState {
    let used: BTreeSet<Name> = ineq
        .vars()
        .into_iter()
        .chain(ineq.atoms(AtomKind::Nominal))
        .chain(ineq.atoms(AtomKind::Conominal))
        .collect();
    let pick = |base: &str| {
        (0..)
            .map(|k| format!("{base}{k}"))
            .find(|name| !used.contains(name.as_str()))
            .map(|name| Name::from(name.as_str()))
            .expect("unbounded range")
    };
    let m0 = Formula::Conominal(pick("m"));
    let mut st = if ineq.lhs == Formula::Top {
        AlbaState::new(
            vec![Inequality::new(ineq.rhs.clone(), m0.clone())],
            Inequality::new(Formula::Top, m0),
        )
    } else {
        let i0 = Formula::Nominal(pick("i"));
        AlbaState::new(
            vec![
                Inequality::new(i0.clone(), ineq.lhs.clone()),
                Inequality::new(ineq.rhs.clone(), m0.clone()),
            ],
            Inequality::new(i0, m0),
        )
    };
    st.used.extend(used);
    st.record("first-approximation", ineq.to_string(), None);
    st
}

/// Signs of the occurrences of `v` in `ineq`: `.0` is set when some
/// occurrence is positive in the right side or negative in the left side
/// (critical for order type 1), `.1` for the opposite sign.
pub fn occurrence_signs(ineq: &Inequality, v: &str) -> (bool, bool) {
    let mut plus = false;
    let mut minus = false;
    for (f, right) in [(&ineq.lhs, false), (&ineq.rhs, true)] {
        let pol = f.polarity(v);
        let pos = matches!(pol, Polarity::Positive | Polarity::Both);
        let neg = matches!(pol, Polarity::Negative | Polarity::Both);
        if right {
            plus |= pos;
            minus |= neg;
        } else {
            plus |= neg;
            minus |= pos;
        }
    }
    (plus, minus)
}

/// Whether `f`, placed on the given side of an inequality, contains an
/// occurrence that is critical for `eps`.
pub(crate) fn has_critical(f: &Formula, on_right: bool, eps: &BTreeMap<Name, Epsilon>) -> bool {
    f.vars().iter().any(|v| {
        let pol = f.polarity(v);
        let pos = matches!(pol, Polarity::Positive | Polarity::Both);
        let neg = matches!(pol, Polarity::Negative | Polarity::Both);
        let (plus, minus) = if on_right { (pos, neg) } else { (neg, pos) };
        match eps.get(v) {
            Some(Epsilon::One) => plus,
            Some(Epsilon::Partial) => minus,
            None => false,
        }
    })
}

fn is_var(f: &Formula) -> Option<&Name> {
    match f {
        Formula::Var(v) => Some(v),
        _ => None,
    }
}

/// An inequality needs no more work when it has no critical occurrence or
/// isolates a critical variable against a critical-free side.
fn settled(ineq: &Inequality, eps: &BTreeMap<Name, Epsilon>) -> bool {
    let lhs_crit = has_critical(&ineq.lhs, false, eps);
    let rhs_crit = has_critical(&ineq.rhs, true, eps);
    if !lhs_crit && !rhs_crit {
        return true;
    }
    if let Some(p) = is_var(&ineq.rhs) {
        if eps.get(p) == Some(&Epsilon::One) && !ineq.lhs.contains_var(p) && !lhs_crit {
            return true;
        }
    }
    if let Some(p) = is_var(&ineq.lhs) {
        if eps.get(p) == Some(&Epsilon::Partial) && !ineq.rhs.contains_var(p) && !rhs_crit {
            return true;
        }
    }
    false
}

fn is_trivial(ineq: &Inequality) -> bool {
    ineq.lhs == ineq.rhs || ineq.rhs == Formula::Top || ineq.lhs == Formula::Bot
}

/// Bring every inequality of the system into a shape ready for the
/// Ackermann rules.
fn isolate(
    mut st: AlbaState,
    eps: &BTreeMap<Name, Epsilon>,
    budget: &mut usize,
) -> Result<AlbaState, AlbaState> {
    loop {
        if *budget == 0 {
            return Err(st);
        }
        if let Some(ix) = st.inequalities.iter().position(is_trivial) {
            let op = st.inequalities[ix].clone();
            st = apply_rule(&st, &AlbaRule::DropTrivial, Some(&op), &[]).map_err(|_| st.clone())?;
            *budget -= 1;
            continue;
        }
        let Some(ix) = st.inequalities.iter().position(|i| !settled(i, eps)) else {
            return Ok(st);
        };
        let op = st.inequalities[ix].clone();
        match isolation_step(&st, &op, eps) {
            Some(next) => {
                st = next;
                *budget -= 1;
            }
            None => return Err(st),
        }
    }
}

fn isolation_step(
    st: &AlbaState,
    op: &Inequality,
    eps: &BTreeMap<Name, Epsilon>,
) -> Option<AlbaState> {
    let crit_l = |f: &Formula| has_critical(f, false, eps);
    let crit_r = |f: &Formula| has_critical(f, true, eps);
    let apply = |rule: AlbaRule, path: &[bool]| apply_rule(st, &rule, Some(op), path).ok();
    match (&op.lhs, &op.rhs) {
        (_, Formula::And(..)) => apply(AlbaRule::SplitMeet, &[]),
        (Formula::Or(..), _) => apply(AlbaRule::SplitJoin, &[]),
        (_, Formula::Imp(a, b)) => {
            // Inside the right side, `a` sits negatively: it is critical as a
            // left-hand term would be.
            if !crit_l(a) {
                apply(AlbaRule::Residuate, &[])
            } else if !crit_r(b) && !crit_l(&op.lhs) {
                apply(AlbaRule::ResiduateToLeftImp, &[])
            } else {
                None
            }
        }
        (_, Formula::LImp(a, b)) => {
            if !crit_l(b) {
                apply(AlbaRule::ResiduateLeftImp, &[])
            } else if !crit_r(a) && !crit_l(&op.lhs) {
                apply(AlbaRule::ResiduateLeftImpToImp, &[])
            } else {
                None
            }
        }
        (Formula::Prod(a, b), _) => {
            if crit_l(b) && !crit_l(a) {
                apply(AlbaRule::ResiduateProdRight, &[])
            } else if crit_l(a) && !crit_l(b) {
                apply(AlbaRule::ResiduateProdLeft, &[])
            } else {
                None
            }
        }
        (Formula::Imp(..), Formula::Conominal(_)) => approximate_skeleton(st, op, eps),
        (Formula::Nominal(_), Formula::Prod(a, b)) => {
            if crit_r(a) && !a.is_atom() {
                apply(AlbaRule::ApproxProdFirst, &[])
            } else if crit_r(b) && !b.is_atom() {
                apply(AlbaRule::ApproxProdSecond, &[])
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Approximate `A -> B <= m`, descending through second arguments of
/// nested implications and introducing fresh nominals for first arguments
/// and fresh conominals for critical second arguments.
fn approximate_skeleton(
    st: &AlbaState,
    op: &Inequality,
    eps: &BTreeMap<Name, Epsilon>,
) -> Option<AlbaState> {
    let mut cur_state = st.clone();
    let mut cur = op.clone();
    let ix = st.inequalities.iter().position(|i| i == op)?;
    let mut path: Vec<bool> = Vec::new();
    let mut changed = false;
    while let Some(Formula::Imp(a, b)) = cur.lhs.at_path(&path).cloned() {
        let first_critical = match &*a {
            Formula::Var(v) => eps.get(v) == Some(&Epsilon::One),
            other => other.has_vars(),
        };
        if first_critical {
            cur_state =
                apply_rule(&cur_state, &AlbaRule::ApproxImpFirst, Some(&cur), &path).ok()?;
            cur = cur_state.inequalities.get(ix)?.clone();
            changed = true;
        }
        match &*b {
            Formula::Imp(..) => {
                path.push(true);
                continue;
            }
            Formula::Var(v) if eps.get(v) != Some(&Epsilon::Partial) => {}
            other if !other.has_vars() => {}
            _ => {
                cur_state =
                    apply_rule(&cur_state, &AlbaRule::ApproxImpSecond, Some(&cur), &path).ok()?;
                changed = true;
            }
        }
        break;
    }
    changed.then_some(cur_state)
}

/// Run one system to a pure quasi-inequality with the given order type and
/// elimination order.
fn reduce(
    start: &AlbaState,
    eps: &BTreeMap<Name, Epsilon>,
    order: &[Name],
    max_steps: usize,
) -> Result<AlbaState, AlbaState> {
    let mut budget = max_steps;
    let mut st = isolate(start.clone(), eps, &mut budget)?;
    for p in order {
        if !st.vars().contains(p) {
            continue;
        }
        let rule = match eps.get(p) {
            Some(Epsilon::Partial) => AlbaRule::LeftAckermann(p.clone()),
            _ => AlbaRule::RightAckermann(p.clone()),
        };
        st = apply_rule(&st, &rule, None, &[]).map_err(|_| st.clone())?;
        st = isolate(st, eps, &mut budget)?;
    }
    if !st.vars().is_empty() {
        return Err(st);
    }
    Ok(st)
}

pub(crate) fn permutations(items: &[Name], limit: usize) -> Vec<Vec<Name>> {
    let mut out = Vec::new();
    let mut cur = items.to_vec();
    fn heap(k: usize, cur: &mut Vec<Name>, out: &mut Vec<Vec<Name>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out, limit);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(cur.len(), &mut cur, &mut out, limit);
    if out.is_empty() {
        out.push(Vec::new());
    }
    out
}

/// Reduce one preprocessed inequality.
fn run_system(
    ineq: &Inequality,
    cert: Option<&InductiveCertificate>,
    opts: &AlbaOptions,
) -> Result<AlbaState, AlbaState> {
    let start = first_approximation(ineq);
    let mut candidates: Vec<(BTreeMap<Name, Epsilon>, Vec<Name>)> = Vec::new();
    if let Some(c) = cert {
        let mut eps = c.epsilon.clone();
        for v in ineq.vars() {
            eps.entry(v).or_insert(Epsilon::One);
        }
        candidates.push((eps, c.topological_order()));
    }
    if let Ok(Some(g)) = guiding_certificate(ineq) {
        candidates.push((g.epsilon.clone(), g.topological_order()));
    }
    if let Ok(all) = all_certificates(ineq) {
        for c in all {
            candidates.push((c.epsilon.clone(), c.topological_order()));
        }
    }
    let vars: Vec<Name> = ineq.vars().into_iter().collect();
    for bits in 0..1u32 << vars.len() {
        let eps: BTreeMap<Name, Epsilon> = vars
            .iter()
            .enumerate()
            .map(|(k, v)| {
                (
                    v.clone(),
                    if bits >> k & 1 == 1 {
                        Epsilon::Partial
                    } else {
                        Epsilon::One
                    },
                )
            })
            .collect();
        for order in permutations(&vars, opts.max_attempts) {
            candidates.push((eps.clone(), order));
        }
    }
    let mut last = start.clone();
    for (eps, order) in candidates.into_iter().take(opts.max_attempts.max(1)) {
        match reduce(&start, &eps, &order, opts.max_steps) {
            Ok(done) => return Ok(done),
            Err(stuck) => last = stuck,
        }
    }
    Err(last)
}

/// Run ALBA on a strict implication inequality.
pub fn run_alba(
    ineq: &Inequality,
    cert: Option<&InductiveCertificate>,
) -> Result<AlbaResult, AlbaError> {
    run_alba_with(ineq, cert, &AlbaOptions::default())
}

pub fn run_alba_with(
    ineq: &Inequality,
    cert: Option<&InductiveCertificate>,
    opts: &AlbaOptions,
) -> Result<AlbaResult, AlbaError> {
    let preprocessed = preprocess_with(ineq, opts)?;
    let mut outputs = Vec::new();
    let mut traces = Vec::new();
    for piece in &preprocessed {
        if !piece.has_vars() {
            outputs.push(QuasiInequality::new([], piece.clone()));
            traces.push(Vec::new());
            continue;
        }
        match run_system(piece, cert, opts) {
            Ok(st) => {
                outputs.push(st.as_quasi());
                traces.push(st.trace);
            }
            Err(stuck) => return Ok(AlbaResult::Failure(Box::new(stuck))),
        }
    }
    Ok(AlbaResult::Success {
        preprocessed,
        outputs,
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_inequality;

    fn ineq(text: &str) -> Inequality {
        parse_inequality(text, Language::StrictImplication).unwrap()
    }

    #[test]
    fn preprocess_examples() {
        assert_eq!(
            preprocess(&ineq("q <= p -> p")).unwrap(),
            vec![ineq("q <= p -> p")]
        );
        assert_eq!(
            preprocess(&ineq("p | q <= r")).unwrap(),
            vec![ineq("p <= r"), ineq("q <= r")]
        );
        let opts = AlbaOptions {
            eliminate_single_polarity: true,
            ..AlbaOptions::default()
        };
        assert_eq!(
            preprocess_with(&ineq("q <= p -> p"), &opts).unwrap(),
            vec![ineq("bot <= p -> p")]
        );
    }

    #[test]
    fn preprocess_distributes_in_the_skeleton() {
        let out = preprocess(&ineq("p & (q | r) <= s")).unwrap();
        assert_eq!(out, vec![ineq("p & q <= s"), ineq("p & r <= s")]);
        let imp = preprocess(&ineq("s <= (p | q) -> r")).unwrap();
        assert_eq!(imp, vec![ineq("s <= p -> r"), ineq("s <= q -> r")]);
        let inside = preprocess(&ineq("(p | q) -> r <= s")).unwrap();
        assert_eq!(inside, vec![ineq("(p | q) -> r <= s")]);
    }

    #[test]
    fn first_approximation_examples() {
        let tr = ineq("(p -> q) & (q -> r) <= p -> r");
        let st = first_approximation(&tr);
        assert_eq!(
            st.as_quasi().to_string(),
            "j:i0 <= (p -> q) & (q -> r) ; p -> r <= m:m0 => j:i0 <= m:m0"
        );
        let bt = first_approximation(&ineq("bot <= top"));
        assert_eq!(bt.inequalities.len(), 2);
        assert_eq!(bt.goal.to_string(), "j:i0 <= m:m0");
    }

    #[test]
    fn fresh_names_never_repeat() {
        let mut st = first_approximation(&ineq("p <= p"));
        let mut seen = BTreeSet::new();
        for _ in 0..20 {
            let Formula::Nominal(n) = st.fresh_nominal() else {
                unreachable!()
            };
            assert!(seen.insert(n));
            let Formula::Conominal(n) = st.fresh_conominal() else {
                unreachable!()
            };
            assert!(seen.insert(n));
        }
    }
}
