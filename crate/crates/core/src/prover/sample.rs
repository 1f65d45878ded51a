//! Seeded generators of sequents and mix obligations for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{prove, DerivationTree, Limits, RuleSet};
use crate::syntax::{ConsecutionSequent, Context, Formula, Inequality, Structure};

const VARS: [&str; 3] = ["p", "q", "r"];

/// A random formula with `size` nodes (one fewer when `size` is even) over `p`, `q`, `r`.
pub fn random_formula(rng: &mut impl Rng, size: usize) -> Formula {
    // Binary connectives need an odd number of nodes.
    let size = if size.is_multiple_of(2) {
        size.saturating_sub(1)
    } else {
        size
    };
    if size <= 1 {
        return match rng.gen_range(0..40) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::var(VARS.choose(rng).expect("nonempty")),
        };
    }
    let left = 2 * rng.gen_range(0..(size - 1) / 2) + 1;
    let a = random_formula(rng, left);
    let b = random_formula(rng, size - 1 - left);
    match rng.gen_range(0..5) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2 => Formula::imp(a, b),
        3 => Formula::limp(a, b),
        _ => Formula::prod(a, b),
    }
}

/// A random formula of at most `max` nodes.
pub fn random_formula_up_to(rng: &mut impl Rng, max: usize) -> Formula {
    let size = rng.gen_range(1..=max.max(1));
    random_formula(rng, size)
}

/// A random structure with `leaves` leaves holding formulas of at most
/// `max` nodes.
pub fn random_structure(rng: &mut impl Rng, leaves: usize, max: usize) -> Structure {
    if leaves <= 1 {
        return Structure::leaf(random_formula_up_to(rng, max));
    }
    let k = rng.gen_range(1..leaves);
    let a = random_structure(rng, k, max);
    let b = random_structure(rng, leaves - k, max);
    if rng.gen_bool(0.5) {
        Structure::prod(a, b)
    } else {
        Structure::meet(a, b)
    }
}

/// Formula sequents with sides of at most `max` nodes that `rules` proves
/// within `limits`, with their derivations. Draws until `count` are found or
/// `attempts` candidates have been tried.
pub fn provable_sequents(
    rules: &RuleSet,
    limits: &Limits,
    max: usize,
    count: usize,
    attempts: usize,
    seed: u64,
) -> Vec<(Inequality, DerivationTree)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Inequality, DerivationTree)> = Vec::new();
    for _ in 0..attempts {
        if out.len() >= count {
            break;
        }
        let lhs = random_formula_up_to(&mut rng, max);
        let rhs = if rng.gen_bool(0.5) {
            random_formula_up_to(&mut rng, max)
        } else {
            // Reuse a piece of the left side to raise the hit rate.
            let parts: Vec<Formula> = lhs.subformulas().into_iter().collect();
            let part = parts.choose(&mut rng).expect("nonempty").clone();
            let extra = random_formula_up_to(&mut rng, 2);
            match rng.gen_range(0..3) {
                0 => part,
                1 => Formula::or(part, extra),
                _ => Formula::imp(extra, part),
            }
        };
        if rhs.size() > max {
            continue;
        }
        let ineq = Inequality::new(lhs, rhs);
        if out.iter().any(|(i, _)| *i == ineq) {
            continue;
        }
        let goal = ConsecutionSequent::new(Structure::leaf(ineq.lhs.clone()), ineq.rhs.clone());
        if let Ok(Some(d)) = prove(&goal, rules, limits) {
            out.push((ineq, d));
        }
    }
    out
}

/// Premises for one mix: `left` is `Delta |- phi`, `right` is
/// `G[phi]...[phi] |- psi`, and `conclusion` is `G[Delta]...[Delta] |- psi`.
#[derive(Clone, Debug)]
pub struct MixObligation {
    pub left: ConsecutionSequent,
    pub context: Context,
    pub right: ConsecutionSequent,
    pub conclusion: ConsecutionSequent,
    /// Sum of the heights of the two premise derivations.
    pub premise_height: usize,
}

/// Hole at a nonempty random subset of the leaves equal to `phi`.
fn punch(rng: &mut impl Rng, s: &Structure, phi: &Formula) -> Context {
    fn go(
        rng: &mut impl Rng,
        s: &Structure,
        phi: &Formula,
        forced: &mut Option<usize>,
        seen: &mut usize,
    ) -> Context {
        match s {
            Structure::Leaf(f) if f == phi => {
                let k = *seen;
                *seen += 1;
                if *forced == Some(k) || rng.gen_bool(0.5) {
                    Context::Hole
                } else {
                    Context::Leaf(f.clone())
                }
            }
            Structure::Leaf(f) => Context::Leaf(f.clone()),
            Structure::Prod(a, b) => {
                let ca = go(rng, a, phi, forced, seen);
                Context::Prod(Box::new(ca), Box::new(go(rng, b, phi, forced, seen)))
            }
            Structure::Meet(a, b) => {
                let ca = go(rng, a, phi, forced, seen);
                Context::Meet(Box::new(ca), Box::new(go(rng, b, phi, forced, seen)))
            }
        }
    }
    let occurrences = s.leaves().into_iter().filter(|f| *f == phi).count();
    let mut forced = Some(rng.gen_range(0..occurrences));
    go(rng, s, phi, &mut forced, &mut 0)
}

/// Candidate antecedents `Delta` with `Delta |- phi` derivable.
fn left_candidates(
    rng: &mut impl Rng,
    phi: &Formula,
    pool: &[ConsecutionSequent],
) -> Vec<Structure> {
    let chi = random_formula_up_to(rng, 2);
    let leaf = |f: Formula| Structure::leaf(f);
    let mut out = vec![
        Structure::meet(leaf(phi.clone()), leaf(chi.clone())),
        Structure::meet(leaf(chi.clone()), leaf(phi.clone())),
        Structure::prod(
            leaf(chi.clone()),
            leaf(Formula::imp(chi.clone(), phi.clone())),
        ),
        Structure::prod(
            leaf(Formula::limp(phi.clone(), chi.clone())),
            leaf(chi.clone()),
        ),
        leaf(Formula::and(phi.clone(), chi)),
        leaf(Formula::Bot),
    ];
    match phi {
        Formula::Or(a, b) => out.extend([leaf(a.as_ref().clone()), leaf(b.as_ref().clone())]),
        Formula::And(a, b) => out.push(leaf(Formula::and(b.as_ref().clone(), a.as_ref().clone()))),
        Formula::Prod(a, b) => out.push(Structure::prod(
            leaf(a.as_ref().clone()),
            leaf(b.as_ref().clone()),
        )),
        _ => {}
    }
    out.extend(
        pool.iter()
            .filter(|s| s.succedent == *phi)
            .map(|s| s.antecedent.clone()),
    );
    out
}

/// Mix obligations built from sequents occurring in derivations found by
/// `rules`. Both premises of each obligation have cut-free derivations.
pub fn mix_obligations(rules: &RuleSet, count: usize, seed: u64) -> Vec<MixObligation> {
    let limits = Limits::default();
    let proved = provable_sequents(rules, &limits, 6, 4 * count, 200 * count, seed);
    let pool: Vec<ConsecutionSequent> = proved
        .iter()
        .flat_map(|(_, d)| d.sequents().into_iter().cloned())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x006d_6978);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count && !pool.is_empty() {
        tries += 1;
        let right = pool.choose(&mut rng).expect("nonempty").clone();
        let leaves: Vec<Formula> = right.antecedent.leaves().into_iter().cloned().collect();
        let phi = leaves
            .choose(&mut rng)
            .expect("structures have leaves")
            .clone();
        let delta = left_candidates(&mut rng, &phi, &pool)
            .choose(&mut rng)
            .expect("nonempty")
            .clone();
        if delta == Structure::leaf(phi.clone()) {
            continue;
        }
        let left = ConsecutionSequent::new(delta, phi.clone());
        let (Ok(Some(dl)), Ok(Some(dr))) =
            (prove(&left, rules, &limits), prove(&right, rules, &limits))
        else {
            continue;
        };
        // Premises closed by an axiom make the obligation trivial.
        if dr.premises.is_empty() || dl.premises.is_empty() {
            continue;
        }
        let context = punch(&mut rng, &right.antecedent, &phi);
        let conclusion =
            ConsecutionSequent::new(context.fill(&left.antecedent), right.succedent.clone());
        out.push(MixObligation {
            left,
            context,
            right,
            conclusion,
            premise_height: dl.height() + dr.height(),
        });
    }
    out
}
