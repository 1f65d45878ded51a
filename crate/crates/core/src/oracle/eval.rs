use std::collections::BTreeMap;

use super::{Algebra, OracleError};
use crate::syntax::{AtomKind, Formula, Inequality, Name, QuasiInequality};

/// Default cap on the number of assignments examined by one validity check.
pub const DEFAULT_BUDGET: u128 = 1 << 30;

/// Values for the atoms of a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub vars: BTreeMap<Name, u64>,
    pub nominals: BTreeMap<Name, u64>,
    pub conominals: BTreeMap<Name, u64>,
}

impl Assignment {
    fn get(&self, kind: AtomKind, name: &Name) -> Option<u64> {
        match kind {
            AtomKind::Var => self.vars.get(name),
            AtomKind::Nominal => self.nominals.get(name),
            AtomKind::Conominal => self.conominals.get(name),
        }
        .copied()
    }

    fn set(&mut self, kind: AtomKind, name: Name, value: u64) {
        match kind {
            AtomKind::Var => self.vars.insert(name, value),
            AtomKind::Nominal => self.nominals.insert(name, value),
            AtomKind::Conominal => self.conominals.insert(name, value),
        };
    }
}

/// Numbering of the atoms shared by a group of compiled formulas.
#[derive(Clone, Debug, Default)]
pub struct Slots {
    index: BTreeMap<(AtomKind, Name), usize>,
    order: Vec<(AtomKind, Name)>,
}

impl Slots {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn atoms(&self) -> &[(AtomKind, Name)] {
        &self.order
    }

    fn slot(&mut self, kind: AtomKind, name: &Name) -> usize {
        if let Some(&i) = self.index.get(&(kind, name.clone())) {
            return i;
        }
        let i = self.order.len();
        self.index.insert((kind, name.clone()), i);
        self.order.push((kind, name.clone()));
        i
    }
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Slot(usize),
    Top,
    Bot,
    And,
    Or,
    Imp,
    LImp,
    Prod,
}

/// A formula flattened to postfix code over numbered slots.
#[derive(Clone, Debug)]
pub struct Compiled {
    code: Vec<Instr>,
}

impl Compiled {
    pub fn new(f: &Formula, slots: &mut Slots) -> Compiled {
        let mut code = Vec::with_capacity(f.size());
        emit(f, slots, &mut code);
        Compiled { code }
    }

    pub fn eval<A: Algebra + ?Sized>(&self, alg: &A, vals: &[u64], stack: &mut Vec<u64>) -> u64 {
        stack.clear();
        for instr in &self.code {
            let v = match *instr {
                Instr::Slot(i) => vals[i],
                Instr::Top => alg.top(),
                Instr::Bot => alg.bot(),
                _ => {
                    let b = stack.pop().expect("well-formed code");
                    let a = stack.pop().expect("well-formed code");
                    match *instr {
                        Instr::And => alg.meet(a, b),
                        Instr::Or => alg.join(a, b),
                        Instr::Imp => alg.imp(a, b),
                        Instr::LImp => alg.limp(a, b),
                        _ => alg.prod(a, b),
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("nonempty code")
    }
}

fn emit(f: &Formula, slots: &mut Slots, code: &mut Vec<Instr>) {
    let instr = match f {
        Formula::Var(n) => Instr::Slot(slots.slot(AtomKind::Var, n)),
        Formula::Nominal(n) => Instr::Slot(slots.slot(AtomKind::Nominal, n)),
        Formula::Conominal(n) => Instr::Slot(slots.slot(AtomKind::Conominal, n)),
        Formula::Top => Instr::Top,
        Formula::Bot => Instr::Bot,
        _ => {
            let (a, b) = f.children().expect("binary node");
            emit(a, slots, code);
            emit(b, slots, code);
            match f {
                Formula::And(..) => Instr::And,
                Formula::Or(..) => Instr::Or,
                Formula::Imp(..) => Instr::Imp,
                Formula::LImp(..) => Instr::LImp,
                _ => Instr::Prod,
            }
        }
    };
    code.push(instr);
}

/// Value of `f` under `assignment`.
pub fn evaluate<A: Algebra + ?Sized>(
    alg: &A,
    f: &Formula,
    assignment: &Assignment,
) -> Result<u64, OracleError> {
    let mut slots = Slots::default();
    let code = Compiled::new(f, &mut slots);
    let vals = slots
        .atoms()
        .iter()
        .map(|(k, n)| {
            assignment
                .get(*k, n)
                .ok_or_else(|| OracleError::Uninterpretable(n.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(code.eval(alg, &vals, &mut Vec::new()))
}

/// Whether `ineq` holds under every assignment. Propositional variables
/// range over the carrier, nominals over join-irreducibles and conominals
/// over meet-irreducibles.
pub fn validate<A: Algebra + ?Sized>(alg: &A, ineq: &Inequality) -> Result<bool, OracleError> {
    validate_quasi(alg, &QuasiInequality::new([], ineq.clone()))
}

/// Whether every assignment satisfying all antecedents satisfies the consequent.
pub fn validate_quasi<A: Algebra + ?Sized>(
    alg: &A,
    q: &QuasiInequality,
) -> Result<bool, OracleError> {
    Ok(find_counterexample(alg, q, DEFAULT_BUDGET)?.is_none())
}

/// First assignment, in odometer order, that satisfies the antecedents and
/// refutes the consequent.
pub fn find_counterexample<A: Algebra + ?Sized>(
    alg: &A,
    q: &QuasiInequality,
    budget: u128,
) -> Result<Option<Assignment>, OracleError> {
    let mut slots = Slots::default();
    let compile = |i: &Inequality, slots: &mut Slots| {
        (Compiled::new(&i.lhs, slots), Compiled::new(&i.rhs, slots))
    };
    let ants: Vec<_> = q
        .antecedent
        .iter()
        .map(|i| compile(i, &mut slots))
        .collect();
    let goal = compile(&q.consequent, &mut slots);
    let elements = alg.elements();
    let jis = alg.join_irreducibles();
    let mis = alg.meet_irreducibles();
    let domains: Vec<&[u64]> = slots
        .atoms()
        .iter()
        .map(|(k, _)| match k {
            AtomKind::Var => &elements[..],
            AtomKind::Nominal => &jis[..],
            AtomKind::Conominal => &mis[..],
        })
        .collect();
    let needed = domains
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(OracleError::Budget { needed, budget });
    }
    if domains.iter().any(|d| d.is_empty()) {
        return Ok(None);
    }
    let mut idx = vec![0usize; domains.len()];
    let mut vals: Vec<u64> = domains.iter().map(|d| d[0]).collect();
    let mut stack = Vec::with_capacity(32);
    loop {
        let holds = |(l, r): &(Compiled, Compiled), stack: &mut Vec<u64>| {
            let a = l.eval(alg, &vals, stack);
            let b = r.eval(alg, &vals, stack);
            alg.leq(a, b)
        };
        if ants.iter().all(|i| holds(i, &mut stack)) && !holds(&goal, &mut stack) {
            let mut out = Assignment::default();
            for ((k, n), v) in slots.atoms().iter().zip(&vals) {
                out.set(*k, n.clone(), *v);
            }
            return Ok(Some(out));
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < domains[pos].len() {
                vals[pos] = domains[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            vals[pos] = domains[pos][0];
            pos += 1;
        }
    }
}

/// Exhaustive check of the bounded distributive lattice laws, the
/// residuation law and the strict implication laws.
pub fn check_laws<A: Algebra + ?Sized>(alg: &A) -> Result<(), String> {
    let els = alg.elements();
    let (top, bot) = (alg.top(), alg.bot());
    for &a in &els {
        if !alg.leq(bot, a) || !alg.leq(a, top) {
            return Err(format!("{a} is not between the bounds"));
        }
        if alg.imp(a, top) != top || alg.imp(bot, a) != top {
            return Err(format!(
                "implication does not send {a} to top at the bounds"
            ));
        }
        for &b in &els {
            let (m, j) = (alg.meet(a, b), alg.join(a, b));
            if m != alg.meet(b, a) || j != alg.join(b, a) {
                return Err(format!("meet or join of {a}, {b} is not commutative"));
            }
            if alg.leq(a, b) != (m == a) || alg.leq(a, b) != (j == b) {
                return Err(format!(
                    "order disagrees with the lattice operations at {a}, {b}"
                ));
            }
            if alg.meet(a, j) != a || alg.join(a, m) != a {
                return Err(format!("absorption fails at {a}, {b}"));
            }
            for &c in &els {
                if alg.meet(a, alg.join(b, c)) != alg.join(m, alg.meet(a, c)) {
                    return Err(format!("distributivity fails at {a}, {b}, {c}"));
                }
                if alg.meet(m, c) != alg.meet(a, alg.meet(b, c)) {
                    return Err(format!("meet is not associative at {a}, {b}, {c}"));
                }
                let by_prod = alg.leq(alg.prod(a, b), c);
                if by_prod != alg.leq(b, alg.imp(a, c)) || by_prod != alg.leq(a, alg.limp(c, b)) {
                    return Err(format!("residuation fails at {a}, {b}, {c}"));
                }
                if alg.meet(alg.imp(a, b), alg.imp(a, c)) != alg.imp(a, alg.meet(b, c)) {
                    return Err(format!(
                        "implication does not preserve meets at {a}, {b}, {c}"
                    ));
                }
                if alg.meet(alg.imp(a, c), alg.imp(b, c)) != alg.imp(j, c) {
                    return Err(format!(
                        "implication does not reverse joins at {a}, {b}, {c}"
                    ));
                }
            }
        }
    }
    Ok(())
}
