//! Parser for the ASCII surface syntax.
//!
//! Atoms are `[a-z][a-z0-9_']*`, nominals `j:name`, conominals `m:name`, and
//! the constants `top` and `bot`. Binary connectives bind, from loosest to
//! tightest: `->` and `<-`; `*`; `&` and `|`. Structures add `o` (product)
//! and `^` (meet), both looser than every formula connective. All binary
//! operators associate to the left.

use std::collections::BTreeSet;

use thiserror::Error;

use super::formula::{Formula, Language, Name};
use super::sequent::{Inequality, QuasiInequality};
use super::structure::{ConsecutionSequent, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("`{text}` is not in {language}")]
    Language { text: String, language: Language },
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError::Parse {
        pos,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nominal(String),
    Conominal(String),
    And,
    Or,
    Imp,
    LImp,
    Star,
    Caret,
    LParen,
    RParen,
    Turnstile,
    Leq,
    Semi,
    Implies,
    Colon,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_lowercase()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = |a: char, b: char| c == a && bytes.get(i + 1) == Some(&b);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if two('-', '>') {
            i += 2;
            Tok::Imp
        } else if two('<', '-') {
            i += 2;
            Tok::LImp
        } else if two('<', '=') {
            i += 2;
            Tok::Leq
        } else if two('|', '-') {
            i += 2;
            Tok::Turnstile
        } else if two('=', '>') {
            i += 2;
            Tok::Implies
        } else if is_ident_start(c) {
            while i < bytes.len() && is_ident_char(bytes[i]) {
                i += 1;
            }
            let word: String = bytes[start..i].iter().collect();
            let prefixed = (word == "j" || word == "m")
                && bytes.get(i) == Some(&':')
                && bytes.get(i + 1).is_some_and(|&c| is_ident_start(c));
            if prefixed {
                i += 1;
                let name_start = i;
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                let name: String = bytes[name_start..i].iter().collect();
                if word == "j" {
                    Tok::Nominal(name)
                } else {
                    Tok::Conominal(name)
                }
            } else {
                Tok::Ident(word)
            }
        } else {
            i += 1;
            match c {
                '&' => Tok::And,
                '|' => Tok::Or,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                _ => return err(start, format!("unexpected character `{c}`")),
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    F(Formula),
    SProd(Box<Expr>, Box<Expr>),
    SMeet(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn into_structure(self) -> Structure {
        match self {
            Expr::F(f) => Structure::Leaf(f),
            Expr::SProd(a, b) => Structure::prod(a.into_structure(), b.into_structure()),
            Expr::SMeet(a, b) => Structure::meet(a.into_structure(), b.into_structure()),
        }
    }
}

#[derive(Clone, Copy)]
enum BinOp {
    And,
    Or,
    Imp,
    LImp,
    Prod,
    SProd,
    SMeet,
}

impl BinOp {
    fn power(self) -> u8 {
        match self {
            BinOp::SProd | BinOp::SMeet => 1,
            BinOp::Imp | BinOp::LImp => 2,
            BinOp::Prod => 3,
            BinOp::And | BinOp::Or => 4,
        }
    }

    fn structural(self) -> bool {
        matches!(self, BinOp::SProd | BinOp::SMeet)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    structures: bool,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            end: text.len(),
            structures: false,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            err(self.pos(), "unexpected trailing input")
        }
    }

    fn infix(&self) -> Option<BinOp> {
        Some(match self.peek()? {
            Tok::And => BinOp::And,
            Tok::Or => BinOp::Or,
            Tok::Imp => BinOp::Imp,
            Tok::LImp => BinOp::LImp,
            Tok::Star => BinOp::Prod,
            Tok::Ident(w) if self.structures && w == "o" => BinOp::SProd,
            Tok::Caret if self.structures => BinOp::SMeet,
            _ => return None,
        })
    }

    fn expr(&mut self, min_power: u8) -> Result<Expr, SyntaxError> {
        let mut lhs = self.primary()?;
        while let Some(op) = self.infix() {
            let power = op.power();
            if power < min_power {
                break;
            }
            let op_pos = self.pos();
            self.at += 1;
            let rhs = self.expr(power + 1)?;
            lhs = combine(op, lhs, rhs, op_pos)?;
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::LParen) => {
                let e = self.expr(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(w)) => Ok(Expr::F(match w.as_str() {
                "top" => Formula::Top,
                "bot" => Formula::Bot,
                _ => Formula::var(&w),
            })),
            Some(Tok::Nominal(n)) => Ok(Expr::F(Formula::nominal(&n))),
            Some(Tok::Conominal(n)) => Ok(Expr::F(Formula::conominal(&n))),
            Some(_) => err(pos, "expected a formula"),
            None => err(pos, "unexpected end of input"),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        match self.expr(0)? {
            Expr::F(f) => Ok(f),
            _ => err(pos, "expected a formula, found a structure"),
        }
    }

    /// Parse `lhs (<= | |-) rhs`.
    fn inequality(&mut self) -> Result<Inequality, SyntaxError> {
        let lhs = self.formula()?;
        match self.bump() {
            Some(Tok::Leq) | Some(Tok::Turnstile) => {}
            _ => {
                return err(
                    self.toks.get(self.at - 1).map_or(self.end, |t| t.0),
                    "expected `<=` or `|-`",
                )
            }
        }
        let rhs = self.formula()?;
        Ok(Inequality::new(lhs, rhs))
    }
}

fn combine(op: BinOp, lhs: Expr, rhs: Expr, pos: usize) -> Result<Expr, SyntaxError> {
    if op.structural() {
        return Ok(match op {
            BinOp::SProd => Expr::SProd(Box::new(lhs), Box::new(rhs)),
            _ => Expr::SMeet(Box::new(lhs), Box::new(rhs)),
        });
    }
    let (Expr::F(a), Expr::F(b)) = (lhs, rhs) else {
        return err(pos, "formula connective applied to a structure");
    };
    Ok(Expr::F(match op {
        BinOp::And => Formula::and(a, b),
        BinOp::Or => Formula::or(a, b),
        BinOp::Imp => Formula::imp(a, b),
        BinOp::LImp => Formula::limp(a, b),
        _ => Formula::prod(a, b),
    }))
}

fn check_language(f: Formula, language: Language, text: &str) -> Result<Formula, SyntaxError> {
    if f.in_language(language) {
        Ok(f)
    } else {
        Err(SyntaxError::Language {
            text: text.trim().to_string(),
            language,
        })
    }
}

/// Parse a formula and check that it belongs to `language`.
pub fn parse_formula(text: &str, language: Language) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    check_language(f, language, text)
}

/// Parse `lhs <= rhs` or `lhs |- rhs`, both sides in `language`.
pub fn parse_inequality(text: &str, language: Language) -> Result<Inequality, SyntaxError> {
    let mut p = Parser::new(text)?;
    let ineq = p.inequality()?;
    p.finish()?;
    Ok(Inequality::new(
        check_language(ineq.lhs, language, text)?,
        check_language(ineq.rhs, language, text)?,
    ))
}

/// Parse a quasi-inequality `a1 ; ... ; an => goal`.
///
/// The prefixed form `forall i j; m n: body` is also accepted: inside the
/// body the bare names `i`, `j` denote nominals and `m`, `n` conominals.
pub fn parse_quasi(text: &str) -> Result<QuasiInequality, SyntaxError> {
    let mut p = Parser::new(text)?;
    let mut nominals = BTreeSet::new();
    let mut conominals = BTreeSet::new();
    if matches!(p.peek(), Some(Tok::Ident(w)) if w == "forall") {
        p.at += 1;
        let mut into_conominals = false;
        loop {
            match p.bump() {
                Some(Tok::Ident(w)) => {
                    let name: Name = Name::from(w.as_str());
                    if into_conominals {
                        conominals.insert(name);
                    } else {
                        nominals.insert(name);
                    }
                }
                Some(Tok::Semi) if !into_conominals => into_conominals = true,
                Some(Tok::Colon) => break,
                _ => {
                    return err(
                        p.toks.get(p.at - 1).map_or(p.end, |t| t.0),
                        "malformed `forall` prefix",
                    )
                }
            }
        }
    }
    let mut items = vec![p.inequality()?];
    let mut goal = None;
    while let Some(t) = p.bump() {
        match t {
            Tok::Semi if goal.is_none() => items.push(p.inequality()?),
            Tok::Implies if goal.is_none() => goal = Some(p.inequality()?),
            _ => return err(p.toks[p.at - 1].0, "unexpected token in quasi-inequality"),
        }
    }
    let q = match goal {
        Some(g) => QuasiInequality::new(items, g),
        None if items.len() == 1 => QuasiInequality::new([], items.pop().expect("one item")),
        None => return err(p.end, "expected `=>` after antecedents"),
    };
    if nominals.is_empty() && conominals.is_empty() {
        return Ok(q);
    }
    let to_atoms = |names: &BTreeSet<Name>, make: fn(&str) -> Formula| {
        names
            .iter()
            .map(|n| (n.clone(), make(n)))
            .collect::<std::collections::BTreeMap<_, _>>()
    };
    let mut binding = to_atoms(&nominals, Formula::nominal);
    binding.extend(to_atoms(&conominals, Formula::conominal));
    Ok(q.substitute_atoms(super::formula::AtomKind::Var, &binding))
}

/// Parse a structure built from formulas with `o` and `^`.
pub fn parse_structure(text: &str) -> Result<Structure, SyntaxError> {
    let mut p = Parser::new(text)?;
    p.structures = true;
    let e = p.expr(0)?;
    p.finish()?;
    let s = e.into_structure();
    for leaf in s.leaves() {
        check_language(leaf.clone(), Language::LambekCalculus, text)?;
    }
    Ok(s)
}

/// Parse a consecution `structure |- formula`.
pub fn parse_consecution(text: &str) -> Result<ConsecutionSequent, SyntaxError> {
    let mut p = Parser::new(text)?;
    p.structures = true;
    let antecedent = p.expr(0)?.into_structure();
    p.structures = false;
    p.expect(Tok::Turnstile, "`|-`")?;
    let succedent = p.formula()?;
    p.finish()?;
    for leaf in antecedent.leaves() {
        check_language(leaf.clone(), Language::LambekCalculus, text)?;
    }
    let succedent = check_language(succedent, Language::LambekCalculus, text)?;
    Ok(ConsecutionSequent::new(antecedent, succedent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn grammar_cases() {
        assert_eq!(
            parse_formula("p -> p", Language::StrictImplication).unwrap(),
            Formula::imp(v("p"), v("p"))
        );
        assert_eq!(
            parse_formula("(p * s) * s", Language::Product).unwrap(),
            Formula::prod(Formula::prod(v("p"), v("s")), v("s"))
        );
        assert!(matches!(
            parse_formula("j:i -> m:n", Language::StrictImplication),
            Err(SyntaxError::Language { .. })
        ));
        assert_eq!(
            parse_formula("j:i -> m:n", Language::LambekCalculusPlus).unwrap(),
            Formula::imp(Formula::nominal("i"), Formula::conominal("n"))
        );
        assert!(matches!(
            parse_formula("p * q", Language::StrictImplication),
            Err(SyntaxError::Language { .. })
        ));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("p & q -> r * s -> t", Language::LambekCalculus).unwrap();
        let expected = Formula::imp(
            Formula::imp(Formula::and(v("p"), v("q")), Formula::prod(v("r"), v("s"))),
            v("t"),
        );
        assert_eq!(f, expected);
        let g = parse_formula("p -> (q -> r)", Language::StrictImplication).unwrap();
        assert_eq!(g.to_string(), "p -> (q -> r)");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p -> ", Language::StrictImplication) {
            Err(SyntaxError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula("p $ q", Language::StrictImplication).is_err());
        assert!(parse_formula("(p", Language::StrictImplication).is_err());
        assert!(parse_formula("p q", Language::StrictImplication).is_err());
    }

    #[test]
    fn inequalities_and_quasi() {
        let a = parse_inequality("q |- p -> p", Language::StrictImplication).unwrap();
        let b = parse_inequality("q <= p -> p", Language::StrictImplication).unwrap();
        assert_eq!(a, b);
        let q = parse_quasi("forall i j; m n: j * i <= m ; i -> n <= m => j <= m").unwrap();
        assert_eq!(q.antecedent.len(), 2);
        assert!(q.is_pure());
        assert_eq!(
            q.consequent,
            Inequality::new(Formula::nominal("j"), Formula::conominal("m"))
        );
        assert_eq!(parse_quasi(&q.to_string()).unwrap(), q);
        assert_eq!(parse_quasi(&q.display_table()).unwrap(), q);
        let single = parse_quasi("forall i: i <= i * i").unwrap();
        assert!(single.antecedent.is_empty());
    }

    #[test]
    fn structures_and_consecutions() {
        let s = parse_structure("p o (q ^ r)").unwrap();
        assert_eq!(s.tau(), Formula::prod(v("p"), Formula::and(v("q"), v("r"))));
        let c = parse_consecution("(p -> q) o p |- q").unwrap();
        assert_eq!(c.to_string(), "(p -> q) o p |- q");
        assert_eq!(parse_consecution(&c.to_string()).unwrap(), c);
        assert!(parse_formula("p o q", Language::LambekCalculus).is_err());
        assert!(parse_structure("(p o q) * r").is_err());
        let o_var = parse_formula("o -> o", Language::StrictImplication).unwrap();
        assert_eq!(o_var, Formula::imp(v("o"), v("o")));
    }
}
