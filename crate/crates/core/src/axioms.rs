//! The characteristic strict implication sequents and their product-language
//! correspondents.

use std::fmt;
use std::str::FromStr;

use crate::syntax::{parse_inequality, Inequality, Language};

/// A named characteristic sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    I,
    Tr,
    MP,
    W,
    RT,
    B,
    BPrime,
    C,
    Fr,
    WPrime,
    Sym,
    Euc,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom tag `{0}`")]
pub struct UnknownAxiom(pub String);

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::I,
        Axiom::Tr,
        Axiom::MP,
        Axiom::W,
        Axiom::RT,
        Axiom::B,
        Axiom::BPrime,
        Axiom::C,
        Axiom::Fr,
        Axiom::WPrime,
        Axiom::Sym,
        Axiom::Euc,
        Axiom::D,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::I => "I",
            Axiom::Tr => "Tr",
            Axiom::MP => "MP",
            Axiom::W => "W",
            Axiom::RT => "RT",
            Axiom::B => "B",
            Axiom::BPrime => "B'",
            Axiom::C => "C",
            Axiom::Fr => "Fr",
            Axiom::WPrime => "W'",
            Axiom::Sym => "Sym",
            Axiom::Euc => "Euc",
            Axiom::D => "D",
        }
    }

    /// The sequent in the strict implication language.
    pub fn sequent_text(self) -> &'static str {
        match self {
            Axiom::I => "q |- p -> p",
            Axiom::Tr => "(p -> q) & (q -> r) |- p -> r",
            Axiom::MP => "p & (p -> q) |- q",
            Axiom::W => "p |- q -> p",
            Axiom::RT => "p -> q |- r -> (p -> q)",
            Axiom::B => "p -> q |- (r -> p) -> (r -> q)",
            Axiom::BPrime => "p -> q |- (q -> r) -> (p -> r)",
            Axiom::C => "p -> (q -> r) |- q -> (p -> r)",
            Axiom::Fr => "p -> (q -> r) |- (p -> q) -> (p -> r)",
            Axiom::WPrime => "p -> (p -> q) |- p -> q",
            Axiom::Sym => "p |- ((p -> q) -> r) | q",
            Axiom::Euc => "top |- ((p -> q) -> r) | (p -> q)",
            Axiom::D => "top -> bot |- bot",
        }
    }

    pub fn sequent(self) -> Inequality {
        parse_inequality(self.sequent_text(), Language::StrictImplication)
            .expect("built-in sequents parse")
    }

    /// Name and text of the product-language correspondent, when one is known.
    pub fn correspondent_text(self) -> Option<(&'static str, &'static str)> {
        Some(match self {
            Axiom::I => ("wl", "p * q |- p"),
            Axiom::Tr => ("tr", "p * s |- (p * s) * s"),
            Axiom::MP => ("ct", "p |- p * p"),
            Axiom::W => ("wr", "q * p |- p"),
            Axiom::RT => ("rt", "p * (r * s) |- p * s"),
            Axiom::B => ("b", "r * (t * s) |- (r * t) * s"),
            Axiom::BPrime => ("b'", "p * (t * s) |- (p * s) * t"),
            Axiom::C => ("c", "p * (q * s) |- q * (p * s)"),
            Axiom::Fr => ("fr", "p * (u * s) |- (p * u) * (p * s)"),
            Axiom::WPrime => ("w'", "p * r |- p * (p * r)"),
            Axiom::Sym | Axiom::Euc | Axiom::D => return None,
        })
    }

    pub fn correspondent(self) -> Option<Inequality> {
        self.correspondent_text().map(|(_, text)| {
            parse_inequality(text, Language::Product).expect("built-in sequents parse")
        })
    }

    /// The axiom whose correspondent carries the given short name.
    pub fn from_correspondent_name(name: &str) -> Option<Axiom> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.correspondent_text().is_some_and(|(n, _)| n == name))
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Axiom {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Axiom, UnknownAxiom> {
        let wanted = s.trim().trim_start_matches('(').trim_end_matches(')');
        Axiom::ALL
            .into_iter()
            .find(|a| a.tag().eq_ignore_ascii_case(wanted))
            .or_else(|| Axiom::from_correspondent_name(&wanted.to_ascii_lowercase()))
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}
