use super::{AlgebraSpec, BinaryFrame, FiniteBdrg};

fn chain_order(n: usize) -> Vec<[usize; 2]> {
    (1..n).map(|k| [k - 1, k]).collect()
}

fn table(n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect()
}

fn build(name: &str, size: usize, order: Vec<[usize; 2]>, product: Vec<Vec<usize>>) -> FiniteBdrg {
    FiniteBdrg::from_spec(&AlgebraSpec {
        name: name.to_string(),
        size,
        order,
        product,
    })
    .expect("catalog algebras satisfy the laws")
}

/// Hand-built algebras that are not frame duals, used to separate classes.
///
/// The four-element Boolean lattice is encoded with `0` bottom, `3` top and
/// atoms `1`, `2`.
pub fn catalog() -> Vec<FiniteBdrg> {
    let square = vec![[0, 1], [0, 2], [1, 3], [2, 3]];
    vec![
        build("trivial", 1, vec![], vec![vec![0]]),
        build(
            "boolean chain",
            2,
            chain_order(2),
            table(2, |a, b| a.min(b)),
        ),
        build("zero product chain", 2, chain_order(2), table(2, |_, _| 0)),
        build("goedel chain", 3, chain_order(3), table(3, |a, b| a.min(b))),
        build(
            "lukasiewicz chain",
            3,
            chain_order(3),
            table(3, |a, b| (a + b).saturating_sub(2)),
        ),
        build(
            "left projection chain",
            4,
            chain_order(4),
            table(4, |a, b| if b == 0 { 0 } else { a }),
        ),
        build(
            "left projection square",
            4,
            square.clone(),
            table(4, |a, b| if b == 0 { 0 } else { a }),
        ),
        build(
            "right projection square",
            4,
            square,
            table(4, |a, b| if a == 0 { 0 } else { b }),
        ),
        FiniteBdrg::tabulate(&BinaryFrame::new(2, &[(0, 1)]).expect("valid frame").dual())
            .expect("frame duals satisfy the laws"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{validate, Algebra};
    use crate::syntax::{parse_inequality, Language};

    fn valid(alg: &FiniteBdrg, text: &str) -> bool {
        validate(
            alg,
            &parse_inequality(text, Language::LambekCalculus).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn catalog_entries_are_distinct_and_lawful() {
        let cat = catalog();
        assert!(cat.len() >= 5);
        let noncommutative = cat.iter().any(|a| {
            a.elements()
                .iter()
                .any(|&x| a.elements().iter().any(|&y| a.prod(x, y) != a.prod(y, x)))
        });
        assert!(noncommutative);
    }

    #[test]
    fn boolean_chain_validates_classical_axioms() {
        let cat = catalog();
        let boolean = &cat[1];
        for text in ["p & (p -> q) |- q", "q |- p -> p", "p |- q -> p"] {
            assert!(valid(boolean, text), "{text}");
        }
    }

    #[test]
    fn zero_product_chain_refutes_modus_ponens() {
        let cat = catalog();
        assert!(!valid(&cat[2], "p & (p -> q) |- q"));
    }

    #[test]
    fn trivial_algebra_validates_everything() {
        let cat = catalog();
        assert!(valid(&cat[0], "top |- bot"));
    }
}
