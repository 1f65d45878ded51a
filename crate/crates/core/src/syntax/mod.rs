//! Formulas, inequalities, structures and their concrete syntax.

mod formula;
mod parse;
mod sequent;
mod structure;

pub use formula::{AtomKind, BareFormula, Formula, Language, Name, Polarity};
pub use parse::{
    parse_consecution, parse_formula, parse_inequality, parse_quasi, parse_structure, SyntaxError,
};
pub use sequent::{Inequality, QuasiInequality};
pub use structure::{ConsecutionSequent, Context, Structure};
