//! Signed generation trees and the inductive-inequality test for the strict
//! implication language.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Formula, Inequality, Language, Name};

/// Largest number of variables `find_certificate` will search over.
pub const MAX_CERTIFICATE_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("`{0}` is not a strict implication formula")]
    NotStrictImplication(String),
    #[error("{0} variables exceed the certificate search cap of {MAX_CERTIFICATE_VARS}")]
    TooManyVariables(usize),
    #[error("dependency order is not irreflexive after transitive closure (cycle through `{0}`)")]
    CyclicOrder(Name),
    #[error("certificate gives no order type for variable `{0}`")]
    MissingVariable(Name),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// The order type of a variable: solved for positively (`One`) or
/// negatively (`Partial`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Epsilon {
    One,
    Partial,
}

impl Epsilon {
    /// The sign of an occurrence that is critical for this order type.
    pub fn critical_sign(self) -> Sign {
        match self {
            Epsilon::One => Sign::Plus,
            Epsilon::Partial => Sign::Minus,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::One => "1",
            Epsilon::Partial => "d",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeClass {
    DeltaAdjoint,
    Sra,
    Slr,
    Srr,
    AtomLeaf,
}

impl NodeClass {
    pub fn is_skeleton(self) -> bool {
        matches!(self, NodeClass::DeltaAdjoint | NodeClass::Slr)
    }

    pub fn is_pia(self) -> bool {
        matches!(self, NodeClass::Sra | NodeClass::Srr)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NodeLabel {
    Var(String),
    Top,
    Bot,
    And,
    Or,
    Imp,
}

/// A node of a signed generation tree with every class it may play.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedTree {
    pub label: NodeLabel,
    pub sign: Sign,
    pub classes: Vec<NodeClass>,
    pub children: Vec<SignedTree>,
}

fn classes(label: &NodeLabel, sign: Sign) -> Vec<NodeClass> {
    use NodeClass::*;
    match (label, sign) {
        (NodeLabel::And, Sign::Plus) | (NodeLabel::Or, Sign::Minus) => vec![DeltaAdjoint, Slr, Sra],
        (NodeLabel::Or, Sign::Plus) | (NodeLabel::And, Sign::Minus) => vec![DeltaAdjoint, Srr],
        (NodeLabel::Imp, Sign::Plus) => vec![Srr],
        (NodeLabel::Imp, Sign::Minus) => vec![Slr],
        _ => vec![AtomLeaf],
    }
}

/// Signed generation tree of `f` with root sign `sign`.
pub fn build_signed_tree(f: &Formula, sign: Sign) -> Result<SignedTree, ClassifyError> {
    if !f.in_language(Language::StrictImplication) {
        return Err(ClassifyError::NotStrictImplication(f.to_string()));
    }
    Ok(signed(f, sign))
}

fn signed(f: &Formula, sign: Sign) -> SignedTree {
    let (label, children) = match f {
        Formula::Var(n) => (NodeLabel::Var(n.to_string()), vec![]),
        Formula::Top => (NodeLabel::Top, vec![]),
        Formula::Bot => (NodeLabel::Bot, vec![]),
        Formula::And(a, b) => (NodeLabel::And, vec![signed(a, sign), signed(b, sign)]),
        Formula::Or(a, b) => (NodeLabel::Or, vec![signed(a, sign), signed(b, sign)]),
        Formula::Imp(a, b) => (
            NodeLabel::Imp,
            vec![signed(a, sign.flip()), signed(b, sign)],
        ),
        _ => unreachable!("checked to be in the strict implication language"),
    };
    SignedTree {
        classes: classes(&label, sign),
        label,
        sign,
        children,
    }
}

impl SignedTree {
    /// Leaves labelled with variables, with their signs.
    pub fn var_leaves(&self) -> Vec<(&str, Sign)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a str, Sign)>) {
        if let NodeLabel::Var(v) = &self.label {
            out.push((v, self.sign));
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }
}

/// An order type on the variables together with a strict dependency order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductiveCertificate {
    pub epsilon: BTreeMap<Name, Epsilon>,
    /// Pairs `(a, b)` meaning `a` is strictly below `b`; transitively closed.
    pub omega: BTreeSet<(Name, Name)>,
}

impl InductiveCertificate {
    /// Build a certificate, closing `pairs` under transitivity.
    pub fn new(
        epsilon: BTreeMap<Name, Epsilon>,
        pairs: impl IntoIterator<Item = (Name, Name)>,
    ) -> Result<InductiveCertificate, ClassifyError> {
        let omega = transitive_closure(pairs.into_iter().collect());
        if let Some((a, _)) = omega.iter().find(|(a, b)| a == b) {
            return Err(ClassifyError::CyclicOrder(a.clone()));
        }
        Ok(InductiveCertificate { epsilon, omega })
    }

    pub fn below(&self, a: &str, b: &str) -> bool {
        self.omega.contains(&(Name::from(a), Name::from(b)))
    }

    /// Variables sorted so that every variable follows the ones below it;
    /// ties are broken alphabetically.
    pub fn topological_order(&self) -> Vec<Name> {
        let mut remaining: BTreeSet<Name> = self.epsilon.keys().cloned().collect();
        let mut out = Vec::new();
        while !remaining.is_empty() {
            let next = remaining
                .iter()
                .find(|v| {
                    !remaining
                        .iter()
                        .any(|u| self.omega.contains(&(u.clone(), (*v).clone())))
                })
                .cloned()
                .expect("omega is acyclic");
            remaining.remove(&next);
            out.push(next);
        }
        out
    }
}

impl fmt::Display for InductiveCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps: Vec<String> = self
            .epsilon
            .iter()
            .map(|(v, e)| format!("{v}={e}"))
            .collect();
        let om: Vec<String> = self.omega.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        write!(
            f,
            "epsilon {{{}}} omega {{{}}}",
            eps.join(", "),
            om.join(", ")
        )
    }
}

fn transitive_closure(mut rel: BTreeSet<(Name, Name)>) -> BTreeSet<(Name, Name)> {
    loop {
        let mut added = Vec::new();
        for (a, b) in &rel {
            for (c, d) in &rel {
                if b == c && !rel.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            return rel;
        }
        rel.extend(added);
    }
}

/// Outcome of analysing one order type: either a violation of the branch
/// shape or the dependency edges required by the residual nodes.
enum Analysis {
    Bad,
    Requires(BTreeSet<(Name, Name)>),
}

fn is_critical(sign: Sign, eps: Epsilon) -> bool {
    sign == eps.critical_sign()
}

/// Check one signed tree against `epsilon`, collecting required edges.
fn analyse_tree(
    tree: &SignedTree,
    epsilon: &BTreeMap<Name, Epsilon>,
    required: &mut BTreeSet<(Name, Name)>,
) -> Result<bool, ClassifyError> {
    let mut path: Vec<(&SignedTree, usize)> = Vec::new();
    analyse_node(tree, epsilon, &mut path, required)
}

fn analyse_node<'a>(
    node: &'a SignedTree,
    epsilon: &BTreeMap<Name, Epsilon>,
    path: &mut Vec<(&'a SignedTree, usize)>,
    required: &mut BTreeSet<(Name, Name)>,
) -> Result<bool, ClassifyError> {
    if let NodeLabel::Var(v) = &node.label {
        let eps = *epsilon
            .get(v.as_str())
            .ok_or_else(|| ClassifyError::MissingVariable(Name::from(v.as_str())))?;
        if is_critical(node.sign, eps) {
            return check_branch(v, path, epsilon, required);
        }
        return Ok(true);
    }
    for (k, child) in node.children.iter().enumerate() {
        path.push((node, k));
        let ok = analyse_node(child, epsilon, path, required)?;
        path.pop();
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_pos_imp(t: &SignedTree) -> bool {
    t.label == NodeLabel::Imp && t.sign == Sign::Plus
}

fn is_neg_imp(t: &SignedTree) -> bool {
    t.label == NodeLabel::Imp && t.sign == Sign::Minus
}

fn check_branch(
    leaf: &str,
    path: &[(&SignedTree, usize)],
    epsilon: &BTreeMap<Name, Epsilon>,
    required: &mut BTreeSet<(Name, Name)>,
) -> Result<bool, ClassifyError> {
    // The PIA segment runs from the leaf up to the highest positive implication.
    let Some(top) = path.iter().position(|(n, _)| is_pos_imp(n)) else {
        return Ok(true);
    };
    let segment = &path[top..];
    if segment.iter().any(|(n, _)| is_neg_imp(n)) {
        return Ok(false);
    }
    for (node, taken) in segment {
        let residual = is_pos_imp(node)
            || (node.label == NodeLabel::Or && node.sign == Sign::Plus)
            || (node.label == NodeLabel::And && node.sign == Sign::Minus);
        if !residual {
            continue;
        }
        let sibling = &node.children[1 - taken];
        for (v, sign) in sibling.var_leaves() {
            let eps = *epsilon
                .get(v)
                .ok_or_else(|| ClassifyError::MissingVariable(Name::from(v)))?;
            if is_critical(sign, eps) {
                return Ok(false);
            }
            required.insert((Name::from(v), Name::from(leaf)));
        }
    }
    Ok(true)
}

fn analyse(
    ineq: &Inequality,
    epsilon: &BTreeMap<Name, Epsilon>,
) -> Result<Analysis, ClassifyError> {
    let mut required = BTreeSet::new();
    let plus = build_signed_tree(&ineq.lhs, Sign::Plus)?;
    let minus = build_signed_tree(&ineq.rhs, Sign::Minus)?;
    for tree in [&plus, &minus] {
        if !analyse_tree(tree, epsilon, &mut required)? {
            return Ok(Analysis::Bad);
        }
    }
    Ok(Analysis::Requires(required))
}

/// Whether both `+lhs` and `-rhs` are inductive for `cert`.
pub fn is_inductive(ineq: &Inequality, cert: &InductiveCertificate) -> Result<bool, ClassifyError> {
    Ok(match analyse(ineq, &cert.epsilon)? {
        Analysis::Bad => false,
        Analysis::Requires(edges) => edges.iter().all(|e| cert.omega.contains(e)),
    })
}

/// All order types over `vars` in lexicographic order, `One` before `Partial`.
fn order_types(vars: &[Name]) -> impl Iterator<Item = BTreeMap<Name, Epsilon>> + '_ {
    let n = vars.len();
    (0..1u32 << n).map(move |bits| {
        vars.iter()
            .enumerate()
            .map(|(k, v)| {
                let partial = bits >> (n - 1 - k) & 1 == 1;
                (
                    v.clone(),
                    if partial {
                        Epsilon::Partial
                    } else {
                        Epsilon::One
                    },
                )
            })
            .collect()
    })
}

/// Every order type admitting an inductive certificate, each with the least
/// dependency order that works.
pub fn all_certificates(ineq: &Inequality) -> Result<Vec<InductiveCertificate>, ClassifyError> {
    let vars: Vec<Name> = ineq.vars().into_iter().collect();
    if vars.len() > MAX_CERTIFICATE_VARS {
        return Err(ClassifyError::TooManyVariables(vars.len()));
    }
    let mut out = Vec::new();
    for epsilon in order_types(&vars) {
        if let Analysis::Requires(edges) = analyse(ineq, &epsilon)? {
            // A cycle in the required edges rules out every dependency order.
            if let Ok(cert) = InductiveCertificate::new(epsilon, edges) {
                out.push(cert);
            }
        }
    }
    Ok(out)
}

/// The first certificate in lexicographic order of order types, or `None`
/// if the inequality is not inductive.
///
/// Adding pairs to a dependency order never invalidates a certificate, so
/// for each order type it suffices to test the least order containing the
/// required edges.
pub fn find_certificate(ineq: &Inequality) -> Result<Option<InductiveCertificate>, ClassifyError> {
    Ok(all_certificates(ineq)?.into_iter().next())
}

/// Number of `epsilon`-critical occurrences of each variable.
pub fn critical_counts(
    ineq: &Inequality,
    epsilon: &BTreeMap<Name, Epsilon>,
) -> BTreeMap<Name, usize> {
    let mut counts: BTreeMap<Name, usize> = ineq.vars().into_iter().map(|v| (v, 0)).collect();
    for (f, sign) in [(&ineq.lhs, Sign::Plus), (&ineq.rhs, Sign::Minus)] {
        if let Ok(tree) = build_signed_tree(f, sign) {
            for (v, s) in tree.var_leaves() {
                if epsilon.get(v).is_some_and(|&e| is_critical(s, e)) {
                    *counts.entry(Name::from(v)).or_default() += 1;
                }
            }
        }
    }
    counts
}

/// The certificate used to drive the reduction: the first one in which
/// every variable has a critical occurrence, or else the first one.
pub fn guiding_certificate(
    ineq: &Inequality,
) -> Result<Option<InductiveCertificate>, ClassifyError> {
    let all = all_certificates(ineq)?;
    let every_var_solved =
        |c: &InductiveCertificate| critical_counts(ineq, &c.epsilon).values().all(|&n| n > 0);
    Ok(all
        .iter()
        .find(|c| every_var_solved(c))
        .or(all.first())
        .cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_inequality;

    fn ineq(text: &str) -> Inequality {
        parse_inequality(text, Language::StrictImplication).unwrap()
    }

    fn cert(eps: &[(&str, Epsilon)], pairs: &[(&str, &str)]) -> InductiveCertificate {
        InductiveCertificate::new(
            eps.iter().map(|(v, e)| (Name::from(*v), *e)).collect(),
            pairs.iter().map(|(a, b)| (Name::from(*a), Name::from(*b))),
        )
        .unwrap()
    }

    fn leaf_signs(t: &SignedTree) -> Vec<(String, Sign)> {
        t.var_leaves()
            .into_iter()
            .map(|(v, s)| (v.to_string(), s))
            .collect()
    }

    #[test]
    fn implication_flips_its_first_argument() {
        let f = ineq("p -> q <= top").lhs;
        let plus = build_signed_tree(&f, Sign::Plus).unwrap();
        assert_eq!(plus.classes, vec![NodeClass::Srr]);
        assert_eq!(
            leaf_signs(&plus),
            vec![("p".into(), Sign::Minus), ("q".into(), Sign::Plus)]
        );
        let minus = build_signed_tree(&f, Sign::Minus).unwrap();
        assert_eq!(minus.classes, vec![NodeClass::Slr]);
        assert_eq!(
            leaf_signs(&minus),
            vec![("p".into(), Sign::Plus), ("q".into(), Sign::Minus)]
        );
        let nested = ineq("(p -> q) -> r <= top").lhs;
        assert_eq!(
            leaf_signs(&build_signed_tree(&nested, Sign::Plus).unwrap()),
            vec![
                ("p".into(), Sign::Plus),
                ("q".into(), Sign::Minus),
                ("r".into(), Sign::Plus)
            ]
        );
    }

    #[test]
    fn product_is_rejected() {
        let f = Formula::prod(Formula::var("p"), Formula::var("q"));
        assert!(build_signed_tree(&f, Sign::Plus).is_err());
    }

    #[test]
    fn frege_is_inductive_for_the_chain_order() {
        let fr = ineq("p -> (q -> r) <= (p -> q) -> (p -> r)");
        let one = Epsilon::One;
        let c = cert(
            &[("p", one), ("q", one), ("r", one)],
            &[("p", "q"), ("q", "r")],
        );
        assert!(is_inductive(&fr, &c).unwrap());
        let empty = cert(&[("p", one), ("q", one), ("r", one)], &[]);
        assert!(!is_inductive(&fr, &empty).unwrap());
    }

    #[test]
    fn loeb_is_not_inductive() {
        let lob = ineq("(q -> p) -> p <= q -> p");
        assert!(find_certificate(&lob).unwrap().is_none());
    }

    #[test]
    fn trivial_cases() {
        let pp = ineq("p <= p");
        assert!(is_inductive(&pp, &cert(&[("p", Epsilon::One)], &[])).unwrap());
        let c = find_certificate(&ineq("bot <= top")).unwrap().unwrap();
        assert!(c.epsilon.is_empty() && c.omega.is_empty());
    }

    #[test]
    fn cyclic_orders_are_rejected() {
        let r = InductiveCertificate::new(
            BTreeMap::new(),
            [("p".into(), "q".into()), ("q".into(), "p".into())],
        );
        assert!(matches!(r, Err(ClassifyError::CyclicOrder(_))));
    }

    #[test]
    fn guiding_certificate_solves_every_variable() {
        let sym = ineq("p <= ((p -> q) -> r) | q");
        let g = guiding_certificate(&sym).unwrap().unwrap();
        assert_eq!(g.epsilon[&Name::from("r")], Epsilon::Partial);
        assert!(g.below("p", "q"));
        let first = find_certificate(&sym).unwrap().unwrap();
        assert!(first.epsilon.values().all(|&e| e == Epsilon::One));
    }

    #[test]
    fn topological_order_respects_omega() {
        let c = cert(
            &[
                ("p", Epsilon::One),
                ("q", Epsilon::One),
                ("r", Epsilon::One),
            ],
            &[("r", "p")],
        );
        let order: Vec<String> = c
            .topological_order()
            .iter()
            .map(|n| n.to_string())
            .collect();
        assert_eq!(order, vec!["q", "r", "p"]);
    }
}
