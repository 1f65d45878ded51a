use std::fmt;
use std::sync::Arc;

use super::formula::Formula;

/// A proof structure: formulas combined by the structural product `o` and
/// the structural meet `^`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Structure {
    Leaf(Formula),
    Prod(Arc<Structure>, Arc<Structure>),
    Meet(Arc<Structure>, Arc<Structure>),
}

impl Structure {
    pub fn leaf(f: Formula) -> Structure {
        Structure::Leaf(f)
    }

    pub fn prod(a: Structure, b: Structure) -> Structure {
        Structure::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn meet(a: Structure, b: Structure) -> Structure {
        Structure::Meet(Arc::new(a), Arc::new(b))
    }

    pub fn children(&self) -> Option<(&Structure, &Structure)> {
        match self {
            Structure::Leaf(_) => None,
            Structure::Prod(a, b) | Structure::Meet(a, b) => Some((a, b)),
        }
    }

    pub fn with_children(&self, a: Structure, b: Structure) -> Structure {
        match self {
            Structure::Prod(..) => Structure::prod(a, b),
            Structure::Meet(..) => Structure::meet(a, b),
            Structure::Leaf(_) => self.clone(),
        }
    }

    /// Formula reading: `o` becomes `*` and `^` becomes `&`.
    pub fn tau(&self) -> Formula {
        match self {
            Structure::Leaf(f) => f.clone(),
            Structure::Prod(a, b) => Formula::prod(a.tau(), b.tau()),
            Structure::Meet(a, b) => Formula::and(a.tau(), b.tau()),
        }
    }

    /// Total number of formula nodes plus structural nodes.
    pub fn size(&self) -> usize {
        match self {
            Structure::Leaf(f) => f.size(),
            Structure::Prod(a, b) | Structure::Meet(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Formulas at the leaves, left to right.
    pub fn leaves(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        match self {
            Structure::Leaf(f) => out.push(f),
            Structure::Prod(a, b) | Structure::Meet(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Substructure at a path (`false` = left argument).
    pub fn at_path(&self, path: &[bool]) -> Option<&Structure> {
        match path.split_first() {
            None => Some(self),
            Some((&right, rest)) => {
                let (a, b) = self.children()?;
                if right { b } else { a }.at_path(rest)
            }
        }
    }

    /// Copy with the substructure at `path` replaced.
    pub fn replace_at(&self, path: &[bool], by: Structure) -> Option<Structure> {
        match path.split_first() {
            None => Some(by),
            Some((&right, rest)) => {
                let (a, b) = self.children()?;
                Some(if right {
                    self.with_children(a.clone(), b.replace_at(rest, by)?)
                } else {
                    self.with_children(a.replace_at(rest, by)?, b.clone())
                })
            }
        }
    }

    /// Every position in the tree, in pre-order.
    pub fn positions(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        out.push(path.clone());
        if let Some((a, b)) = self.children() {
            path.push(false);
            a.collect_positions(path, out);
            path.pop();
            path.push(true);
            b.collect_positions(path, out);
            path.pop();
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Leaf(x) if x.is_atom() => write!(f, "{x}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Leaf(x) => write!(f, "{x}"),
            Structure::Prod(a, b) | Structure::Meet(a, b) => {
                a.write_operand(f)?;
                f.write_str(if matches!(self, Structure::Prod(..)) {
                    " o "
                } else {
                    " ^ "
                })?;
                b.write_operand(f)
            }
        }
    }
}

/// A structure with holes. Single-hole contexts are the common case; several
/// holes are used by the mix rule.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Context {
    Hole,
    Leaf(Formula),
    Prod(Box<Context>, Box<Context>),
    Meet(Box<Context>, Box<Context>),
}

impl Context {
    /// The context obtained by punching a hole at `path` in `s`.
    pub fn at(s: &Structure, path: &[bool]) -> Option<Context> {
        match path.split_first() {
            None => Some(Context::Hole),
            Some((&right, rest)) => {
                let (a, b) = s.children()?;
                let (ca, cb) = if right {
                    (Context::from_structure(a), Context::at(b, rest)?)
                } else {
                    (Context::at(a, rest)?, Context::from_structure(b))
                };
                Some(match s {
                    Structure::Prod(..) => Context::Prod(Box::new(ca), Box::new(cb)),
                    _ => Context::Meet(Box::new(ca), Box::new(cb)),
                })
            }
        }
    }

    /// A hole-free context mirroring `s`.
    pub fn from_structure(s: &Structure) -> Context {
        match s {
            Structure::Leaf(f) => Context::Leaf(f.clone()),
            Structure::Prod(a, b) => Context::Prod(
                Box::new(Context::from_structure(a)),
                Box::new(Context::from_structure(b)),
            ),
            Structure::Meet(a, b) => Context::Meet(
                Box::new(Context::from_structure(a)),
                Box::new(Context::from_structure(b)),
            ),
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Context::Hole => 1,
            Context::Leaf(_) => 0,
            Context::Prod(a, b) | Context::Meet(a, b) => a.hole_count() + b.hole_count(),
        }
    }

    /// Plug `s` into every hole.
    pub fn fill(&self, s: &Structure) -> Structure {
        match self {
            Context::Hole => s.clone(),
            Context::Leaf(f) => Structure::Leaf(f.clone()),
            Context::Prod(a, b) => Structure::prod(a.fill(s), b.fill(s)),
            Context::Meet(a, b) => Structure::meet(a.fill(s), b.fill(s)),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(c: &Context, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match c {
                Context::Hole => f.write_str("[]"),
                Context::Leaf(x) if x.is_atom() => write!(f, "{x}"),
                Context::Leaf(x) => write!(f, "({x})"),
                _ => write!(f, "({c})"),
            }
        }
        match self {
            Context::Hole => f.write_str("[]"),
            Context::Leaf(x) => write!(f, "{x}"),
            Context::Prod(a, b) | Context::Meet(a, b) => {
                operand(a, f)?;
                f.write_str(if matches!(self, Context::Prod(..)) {
                    " o "
                } else {
                    " ^ "
                })?;
                operand(b, f)
            }
        }
    }
}

/// A consecution `structure |- formula`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConsecutionSequent {
    pub antecedent: Structure,
    pub succedent: Formula,
}

impl ConsecutionSequent {
    pub fn new(antecedent: Structure, succedent: Formula) -> Self {
        ConsecutionSequent {
            antecedent,
            succedent,
        }
    }

    pub fn size(&self) -> usize {
        self.antecedent.size() + self.succedent.size()
    }
}

impl fmt::Display for ConsecutionSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.antecedent, self.succedent)
    }
}
