use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::formula::{AtomKind, Formula, Name};

/// An inequality `lhs <= rhs`, also read as the sequent `lhs |- rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Inequality {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Inequality {
    pub fn new(lhs: Formula, rhs: Formula) -> Inequality {
        Inequality { lhs, rhs }
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        self.atoms(AtomKind::Var)
    }

    pub fn atoms(&self, kind: AtomKind) -> BTreeSet<Name> {
        let mut out = self.lhs.atoms(kind);
        out.extend(self.rhs.atoms(kind));
        out
    }

    pub fn has_vars(&self) -> bool {
        self.lhs.has_vars() || self.rhs.has_vars()
    }

    pub fn contains_atom(&self, kind: AtomKind, name: &str) -> bool {
        self.lhs.contains_atom(kind, name) || self.rhs.contains_atom(kind, name)
    }

    pub fn substitute(&self, binding: &BTreeMap<Name, Formula>) -> Inequality {
        self.substitute_atoms(AtomKind::Var, binding)
    }

    pub fn substitute_atoms(
        &self,
        kind: AtomKind,
        binding: &BTreeMap<Name, Formula>,
    ) -> Inequality {
        Inequality::new(
            self.lhs.substitute_atoms(kind, binding),
            self.rhs.substitute_atoms(kind, binding),
        )
    }

    /// Render as a sequent `lhs |- rhs`.
    pub fn display_sequent(&self) -> String {
        format!("{} |- {}", self.lhs, self.rhs)
    }

    /// Render with bare nominal and conominal names.
    pub fn display_bare(&self) -> String {
        format!("{} <= {}", self.lhs.display_bare(), self.rhs.display_bare())
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// A quasi-inequality `a1 ; ... ; an => goal`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QuasiInequality {
    pub antecedent: BTreeSet<Inequality>,
    pub consequent: Inequality,
}

impl QuasiInequality {
    pub fn new(antecedent: impl IntoIterator<Item = Inequality>, consequent: Inequality) -> Self {
        QuasiInequality {
            antecedent: antecedent.into_iter().collect(),
            consequent,
        }
    }

    fn all(&self) -> impl Iterator<Item = &Inequality> {
        self.antecedent
            .iter()
            .chain(std::iter::once(&self.consequent))
    }

    /// No propositional variable occurs anywhere.
    pub fn is_pure(&self) -> bool {
        self.all().all(|i| !i.has_vars())
    }

    pub fn atoms(&self, kind: AtomKind) -> BTreeSet<Name> {
        self.all().flat_map(|i| i.atoms(kind)).collect()
    }

    pub fn substitute_atoms(&self, kind: AtomKind, binding: &BTreeMap<Name, Formula>) -> Self {
        QuasiInequality::new(
            self.antecedent
                .iter()
                .map(|i| i.substitute_atoms(kind, binding)),
            self.consequent.substitute_atoms(kind, binding),
        )
    }

    /// Compact form with a universal prefix and bare atom names, e.g.
    /// `forall i j; m: j * i <= m => i <= m`.
    pub fn display_table(&self) -> String {
        let noms = self.atoms(AtomKind::Nominal);
        let conoms = self.atoms(AtomKind::Conominal);
        let join = |s: &BTreeSet<Name>| s.iter().map(|n| &**n).collect::<Vec<_>>().join(" ");
        let mut head = String::from("forall");
        if !noms.is_empty() {
            head.push(' ');
            head.push_str(&join(&noms));
        }
        if !conoms.is_empty() {
            head.push_str(if noms.is_empty() { " ; " } else { "; " });
            head.push_str(&join(&conoms));
        }
        let body = if self.antecedent.is_empty() {
            self.consequent.display_bare()
        } else {
            let ants: Vec<String> = self.antecedent.iter().map(|i| i.display_bare()).collect();
            format!("{} => {}", ants.join(" ; "), self.consequent.display_bare())
        };
        if noms.is_empty() && conoms.is_empty() {
            body
        } else {
            format!("{head}: {body}")
        }
    }
}

impl fmt::Display for QuasiInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.antecedent.iter().enumerate() {
            if k > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.antecedent.is_empty() {
            f.write_str(" => ")?;
        }
        write!(f, "{}", self.consequent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_display_forms() {
        let i = Formula::nominal("i");
        let m = Formula::conominal("m");
        let q = QuasiInequality::new(
            [Inequality::new(
                Formula::prod(i.clone(), i.clone()),
                m.clone(),
            )],
            Inequality::new(i.clone(), m.clone()),
        );
        assert_eq!(q.to_string(), "j:i * j:i <= m:m => j:i <= m:m");
        assert_eq!(q.display_table(), "forall i; m: i * i <= m => i <= m");
        assert!(q.is_pure());
        let plain = QuasiInequality::new([], Inequality::new(Formula::var("p"), Formula::Top));
        assert_eq!(plain.display_table(), "p <= top");
        assert!(!plain.is_pure());
    }
}
