use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Identifier of a propositional variable, nominal or conominal.
pub type Name = Arc<str>;

/// A term of the extended Lambek language with nominal and conominal atoms.
///
/// `Imp(a, b)` is the strict implication `a -> b`, `LImp(a, b)` is the left
/// residual `a <- b`, and `Prod(a, b)` is the fusion `a * b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Var(Name),
    Nominal(Name),
    Conominal(Name),
    Top,
    Bot,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Prod(Arc<Formula>, Arc<Formula>),
    LImp(Arc<Formula>, Arc<Formula>),
}

/// The object languages, ordered by inclusion where comparable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Language {
    /// `&`, `|`, `->`, constants and variables.
    StrictImplication,
    /// `*`, constants and variables.
    Product,
    /// Every connective, no nominals or conominals.
    LambekCalculus,
    /// Everything, including nominals and conominals.
    LambekCalculusPlus,
}

impl Language {
    pub fn name(self) -> &'static str {
        match self {
            Language::StrictImplication => "L_SI",
            Language::Product => "L_prod",
            Language::LambekCalculus => "L_LC",
            Language::LambekCalculusPlus => "L_LC+",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of the occurrences of a variable in a formula.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Polarity {
    Positive,
    Negative,
    Both,
    Absent,
}

impl Polarity {
    fn combine(self, other: Polarity) -> Polarity {
        use Polarity::*;
        match (self, other) {
            (Absent, p) | (p, Absent) => p,
            (a, b) if a == b => a,
            _ => Both,
        }
    }

    fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            p => p,
        }
    }

    /// True when no occurrence is negative.
    pub fn is_monotone(self) -> bool {
        matches!(self, Polarity::Positive | Polarity::Absent)
    }

    /// True when no occurrence is positive.
    pub fn is_antitone(self) -> bool {
        matches!(self, Polarity::Negative | Polarity::Absent)
    }
}

/// Which atoms a substitution or renaming acts on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum AtomKind {
    Var,
    Nominal,
    Conominal,
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn nominal(name: &str) -> Formula {
        Formula::Nominal(Arc::from(name))
    }

    pub fn conominal(name: &str) -> Formula {
        Formula::Conominal(Arc::from(name))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn prod(a: Formula, b: Formula) -> Formula {
        Formula::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn limp(a: Formula, b: Formula) -> Formula {
        Formula::LImp(Arc::new(a), Arc::new(b))
    }

    /// Join of a nonempty list, associated to the left; `Bot` when empty.
    pub fn join_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    /// Meet of a nonempty list, associated to the left; `Top` when empty.
    pub fn meet_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    pub fn is_atom(&self) -> bool {
        self.children().is_none()
    }

    /// The two arguments of a binary connective.
    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Prod(a, b)
            | Formula::LImp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Rebuild a binary node of the same connective with new arguments.
    pub fn with_children(&self, a: Formula, b: Formula) -> Formula {
        match self {
            Formula::And(..) => Formula::and(a, b),
            Formula::Or(..) => Formula::or(a, b),
            Formula::Imp(..) => Formula::imp(a, b),
            Formula::Prod(..) => Formula::prod(a, b),
            Formula::LImp(..) => Formula::limp(a, b),
            atom => atom.clone(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.size() + b.size(),
            None => 1,
        }
    }

    /// Smallest language tag containing the formula. Formulas built only from
    /// variables and constants are reported as `StrictImplication`.
    pub fn language(&self) -> Language {
        if self.in_language(Language::StrictImplication) {
            Language::StrictImplication
        } else if self.in_language(Language::Product) {
            Language::Product
        } else if self.in_language(Language::LambekCalculus) {
            Language::LambekCalculus
        } else {
            Language::LambekCalculusPlus
        }
    }

    /// Whether every node of the formula is allowed in `lang`.
    pub fn in_language(&self, lang: Language) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            let allowed = match f {
                Formula::Var(_) | Formula::Top | Formula::Bot => true,
                Formula::Nominal(_) | Formula::Conominal(_) => lang == Language::LambekCalculusPlus,
                Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => lang != Language::Product,
                Formula::Prod(..) => lang != Language::StrictImplication,
                Formula::LImp(..) => matches!(
                    lang,
                    Language::LambekCalculus | Language::LambekCalculusPlus
                ),
            };
            ok &= allowed;
        });
        ok
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        if let Some((a, b)) = self.children() {
            a.visit(f);
            b.visit(f);
        }
    }

    /// Propositional variables in the formula.
    pub fn vars(&self) -> BTreeSet<Name> {
        self.atoms(AtomKind::Var)
    }

    pub fn nominals(&self) -> BTreeSet<Name> {
        self.atoms(AtomKind::Nominal)
    }

    pub fn conominals(&self) -> BTreeSet<Name> {
        self.atoms(AtomKind::Conominal)
    }

    pub fn atoms(&self, kind: AtomKind) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Some(n) = f.atom_name(kind) {
                out.insert(n.clone());
            }
        });
        out
    }

    /// Atom names of the given kind in order of first occurrence (left to right).
    pub fn atoms_in_order(&self, kind: AtomKind, out: &mut Vec<Name>) {
        self.visit(&mut |f| {
            if let Some(n) = f.atom_name(kind) {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        });
    }

    fn atom_name(&self, kind: AtomKind) -> Option<&Name> {
        match (self, kind) {
            (Formula::Var(n), AtomKind::Var)
            | (Formula::Nominal(n), AtomKind::Nominal)
            | (Formula::Conominal(n), AtomKind::Conominal) => Some(n),
            _ => None,
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.contains_atom(AtomKind::Var, name)
    }

    pub fn contains_atom(&self, kind: AtomKind, name: &str) -> bool {
        match self.atom_name(kind) {
            Some(n) => &**n == name,
            None => match self.children() {
                Some((a, b)) => a.contains_atom(kind, name) || b.contains_atom(kind, name),
                None => false,
            },
        }
    }

    /// Number of occurrences of a propositional variable.
    pub fn count_var(&self, name: &str) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Var(v) if &**v == name) {
                n += 1;
            }
        });
        n
    }

    pub fn has_vars(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Var(_)));
        found
    }

    /// Simultaneous replacement of propositional variables.
    pub fn substitute(&self, binding: &BTreeMap<Name, Formula>) -> Formula {
        self.substitute_atoms(AtomKind::Var, binding)
    }

    /// Simultaneous replacement of atoms of one kind.
    pub fn substitute_atoms(&self, kind: AtomKind, binding: &BTreeMap<Name, Formula>) -> Formula {
        if let Some(n) = self.atom_name(kind) {
            return binding.get(n).cloned().unwrap_or_else(|| self.clone());
        }
        match self.children() {
            Some((a, b)) => self.with_children(
                a.substitute_atoms(kind, binding),
                b.substitute_atoms(kind, binding),
            ),
            None => self.clone(),
        }
    }

    /// Replace a single propositional variable.
    pub fn substitute_var(&self, name: &str, by: &Formula) -> Formula {
        let mut binding = BTreeMap::new();
        binding.insert(Arc::from(name), by.clone());
        self.substitute(&binding)
    }

    /// Polarity of a propositional variable in the positive signed tree of `self`.
    pub fn polarity(&self, var: &str) -> Polarity {
        self.polarity_of(AtomKind::Var, var)
    }

    pub fn polarity_of(&self, kind: AtomKind, name: &str) -> Polarity {
        if let Some(n) = self.atom_name(kind) {
            return if &**n == name {
                Polarity::Positive
            } else {
                Polarity::Absent
            };
        }
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Prod(a, b) => {
                a.polarity_of(kind, name).combine(b.polarity_of(kind, name))
            }
            Formula::Imp(a, b) => a
                .polarity_of(kind, name)
                .flip()
                .combine(b.polarity_of(kind, name)),
            Formula::LImp(a, b) => a
                .polarity_of(kind, name)
                .combine(b.polarity_of(kind, name).flip()),
            _ => Polarity::Absent,
        }
    }

    /// Subterm at a path of argument indices (`false` = first argument).
    pub fn at_path(&self, path: &[bool]) -> Option<&Formula> {
        match path.split_first() {
            None => Some(self),
            Some((&second, rest)) => {
                let (a, b) = self.children()?;
                if second { b } else { a }.at_path(rest)
            }
        }
    }

    /// Copy with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[bool], by: Formula) -> Option<Formula> {
        match path.split_first() {
            None => Some(by),
            Some((&second, rest)) => {
                let (a, b) = self.children()?;
                Some(if second {
                    self.with_children(a.clone(), b.replace_at(rest, by)?)
                } else {
                    self.with_children(a.replace_at(rest, by)?, b.clone())
                })
            }
        }
    }

    /// All subformulas, including `self`.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            out.insert(f.clone());
        });
        out
    }

    fn op_symbol(&self) -> Option<&'static str> {
        Some(match self {
            Formula::And(..) => "&",
            Formula::Or(..) => "|",
            Formula::Imp(..) => "->",
            Formula::Prod(..) => "*",
            Formula::LImp(..) => "<-",
            _ => return None,
        })
    }

    /// Render with nominals and conominals written as bare names.
    pub fn display_bare(&self) -> BareFormula<'_> {
        BareFormula(self)
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, bare: bool) -> fmt::Result {
        match self {
            Formula::Var(n) => f.write_str(n),
            Formula::Nominal(n) if bare => f.write_str(n),
            Formula::Conominal(n) if bare => f.write_str(n),
            Formula::Nominal(n) => write!(f, "j:{n}"),
            Formula::Conominal(n) => write!(f, "m:{n}"),
            Formula::Top => f.write_str("top"),
            Formula::Bot => f.write_str("bot"),
            _ => {
                let (a, b) = self.children().expect("binary node");
                write_operand(a, f, bare)?;
                write!(f, " {} ", self.op_symbol().expect("binary node"))?;
                write_operand(b, f, bare)
            }
        }
    }
}

fn write_operand(x: &Formula, f: &mut fmt::Formatter<'_>, bare: bool) -> fmt::Result {
    if x.is_atom() {
        x.write_with(f, bare)
    } else {
        f.write_str("(")?;
        x.write_with(f, bare)?;
        f.write_str(")")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

/// Display adapter produced by [`Formula::display_bare`].
pub struct BareFormula<'a>(&'a Formula);

impl fmt::Display for BareFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(f, true)
    }
}
