//! Normal forms for pure quasi-inequalities, so that outputs differing only
//! in harmless bookkeeping compare equal.

use std::collections::{BTreeMap, BTreeSet};

use super::permutations;
use crate::syntax::{AtomKind, Formula, Inequality, Name, QuasiInequality};

const MAX_PERMUTED: usize = 6;

/// Positions of the occurrences of a conominal.
fn occurrences(f: &Formula, n: &str, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    match f {
        Formula::Conominal(c) if &**c == n => out.push(path.clone()),
        _ => {
            if let Some((a, b)) = f.children() {
                path.push(false);
                occurrences(a, n, path, out);
                path.pop();
                path.push(true);
                occurrences(b, n, path, out);
                path.pop();
            }
        }
    }
}

/// The conominal occurs once, reached through second arguments of
/// implications only.
fn meet_preserving_slot(f: &Formula, n: &str) -> bool {
    let mut out = Vec::new();
    occurrences(f, n, &mut Vec::new(), &mut out);
    let [path] = out.as_slice() else {
        return false;
    };
    path.iter().all(|&second| second)
        && (0..path.len()).all(|k| matches!(f.at_path(&path[..k]), Some(Formula::Imp(..))))
}

/// Replace `t <= n ; s[n] <= m` by `s[t] <= m` when `n` occurs nowhere else
/// and `s` preserves meets in the slot of `n`.
fn contract_conominals(q: &QuasiInequality) -> QuasiInequality {
    let mut q = q.clone();
    'outer: loop {
        let goal_conoms = q.consequent.atoms(AtomKind::Conominal);
        for n in q.atoms(AtomKind::Conominal) {
            if goal_conoms.contains(&n) {
                continue;
            }
            let users: Vec<Inequality> = q
                .antecedent
                .iter()
                .filter(|i| i.contains_atom(AtomKind::Conominal, &n))
                .cloned()
                .collect();
            let [x, y] = users.as_slice() else {
                continue;
            };
            for (bound, user) in [(x, y), (y, x)] {
                let is_bound = matches!(&bound.rhs, Formula::Conominal(c) if *c == n)
                    && !bound.lhs.contains_atom(AtomKind::Conominal, &n);
                let user_ok = matches!(user.rhs, Formula::Conominal(_))
                    && meet_preserving_slot(&user.lhs, &n);
                if is_bound && user_ok {
                    let binding: BTreeMap<Name, Formula> = [(n.clone(), bound.lhs.clone())].into();
                    let merged = user.substitute_atoms(AtomKind::Conominal, &binding);
                    q.antecedent.remove(bound);
                    q.antecedent.remove(user);
                    q.antecedent.insert(merged);
                    continue 'outer;
                }
            }
        }
        return q;
    }
}

/// Turn `t <= m => i <= m` into `i <= t`, then residuate implications on the
/// right.
fn absorb_single_antecedent(q: &QuasiInequality) -> QuasiInequality {
    let mut q = q.clone();
    if let (Formula::Nominal(_), Formula::Conominal(m)) = (&q.consequent.lhs, &q.consequent.rhs) {
        if q.antecedent.len() == 1 {
            let t = q.antecedent.iter().next().expect("one antecedent").clone();
            if matches!(&t.rhs, Formula::Conominal(c) if c == m)
                && !t.lhs.contains_atom(AtomKind::Conominal, m)
            {
                q = QuasiInequality::new([], Inequality::new(q.consequent.lhs.clone(), t.lhs));
            }
        }
    }
    if q.antecedent.is_empty() {
        let mut goal = q.consequent.clone();
        while let Formula::Imp(a, b) = &goal.rhs {
            goal = Inequality::new(
                Formula::prod((**a).clone(), goal.lhs.clone()),
                (**b).clone(),
            );
        }
        q.consequent = goal;
    }
    q
}

fn canonical_names(k: usize, stems: &[&str]) -> Vec<Name> {
    (0..k)
        .map(|x| {
            let stem = stems[x % stems.len()];
            let round = x / stems.len();
            if round == 0 {
                Name::from(stem)
            } else {
                Name::from(format!("{stem}{round}").as_str())
            }
        })
        .collect()
}

fn sorted_text(q: &QuasiInequality) -> String {
    let mut ants: Vec<String> = q.antecedent.iter().map(|i| i.display_bare()).collect();
    ants.sort();
    ants.dedup();
    let body = if ants.is_empty() {
        q.consequent.display_bare()
    } else {
        format!("{} => {}", ants.join(" ; "), q.consequent.display_bare())
    };
    let noms = q.atoms(AtomKind::Nominal);
    let conoms = q.atoms(AtomKind::Conominal);
    if noms.is_empty() && conoms.is_empty() {
        return body;
    }
    let join = |s: &BTreeSet<Name>| s.iter().map(|n| &**n).collect::<Vec<_>>().join(" ");
    let mut out = String::from("forall");
    if !noms.is_empty() {
        out.push(' ');
        out.push_str(&join(&noms));
    }
    if !conoms.is_empty() {
        out.push_str(if noms.is_empty() { " ; " } else { "; " });
        out.push_str(&join(&conoms));
    }
    format!("{out}: {body}")
}

fn renamings(names: &BTreeSet<Name>, stems: &[&str]) -> Vec<BTreeMap<Name, Formula>> {
    let items: Vec<Name> = names.iter().cloned().collect();
    let targets = canonical_names(items.len(), stems);
    let make = |kind: fn(Name) -> Formula, order: &[Name]| -> BTreeMap<Name, Formula> {
        order
            .iter()
            .zip(&targets)
            .map(|(old, new)| (old.clone(), kind(new.clone())))
            .collect()
    };
    let kind: fn(Name) -> Formula = if stems[0] == "i" {
        Formula::Nominal
    } else {
        Formula::Conominal
    };
    if items.len() > MAX_PERMUTED {
        return vec![make(kind, &items)];
    }
    permutations(&items, usize::MAX)
        .into_iter()
        .map(|order| make(kind, &order))
        .collect()
}

/// Contract conominals, absorb a lone antecedent into the goal and rename
/// atoms to the lexicographically least printed form (nominals `i j k l`,
/// conominals `m n`).
pub fn normalize_result(q: &QuasiInequality) -> QuasiInequality {
    let q = absorb_single_antecedent(&contract_conominals(q));
    let noms = renamings(&q.atoms(AtomKind::Nominal), &["i", "j", "k", "l"]);
    let conoms = renamings(&q.atoms(AtomKind::Conominal), &["m", "n"]);
    let mut best: Option<(String, QuasiInequality)> = None;
    for nb in &noms {
        let renamed = q.substitute_atoms(AtomKind::Nominal, nb);
        for cb in &conoms {
            let candidate = renamed.substitute_atoms(AtomKind::Conominal, cb);
            let text = sorted_text(&candidate);
            if best.as_ref().is_none_or(|(t, _)| text < *t) {
                best = Some((text, candidate));
            }
        }
    }
    best.map(|(_, q)| q).unwrap_or(q)
}

/// Printed normal form; two quasi-inequalities are equivalent up to the
/// bookkeeping in [`normalize_result`] exactly when these strings agree.
pub fn canonical_text(q: &QuasiInequality) -> String {
    sorted_text(&normalize_result(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_quasi;

    fn canon(text: &str) -> String {
        canonical_text(&parse_quasi(text).unwrap())
    }

    #[test]
    fn renaming_is_canonical() {
        assert_eq!(
            canon("forall i j: j * i <= j"),
            canon("forall a b: a * b <= a")
        );
        assert_ne!(
            canon("forall i j: j * i <= j"),
            canon("forall i j: j * i <= i")
        );
    }

    #[test]
    fn single_antecedent_is_absorbed_and_residuated() {
        assert_eq!(
            canon("j:k -> j:k <= m:m0 => j:i0 <= m:m0"),
            canon("forall i j: j * i <= j")
        );
        assert_eq!(
            canon("j:i0 * j:i0 <= m:m0 => j:i0 <= m:m0"),
            "forall i: i <= i * i"
        );
    }

    #[test]
    fn conominals_contract_through_second_arguments() {
        assert_eq!(
            canon("forall i j; m n0 n1: j * i <= n0 ; i -> n1 <= m ; j -> n0 <= m => top <= m"),
            canon("forall i j; m n: i -> n <= m ; j -> (j * i) <= m => top <= m")
        );
        // A conominal in a first argument is left alone.
        let kept = canon("forall i j; m n: j <= n ; n -> i <= m => i <= m");
        assert!(kept.contains('n'), "{kept}");
    }
}
