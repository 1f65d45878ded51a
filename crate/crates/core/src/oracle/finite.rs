use serde::{Deserialize, Serialize};

use super::{check_laws, Algebra, OracleError};

/// Serialized description of a finite algebra: a partial order given by
/// generating pairs `a <= b` and the product table. Residuals, meets and
/// joins are derived and every law is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub size: usize,
    pub order: Vec<[usize; 2]>,
    pub product: Vec<Vec<usize>>,
}

/// A finite bounded distributive lattice-ordered residuated groupoid given
/// by operation tables over the elements `0..size`.
#[derive(Clone, Debug)]
pub struct FiniteBdrg {
    name: String,
    n: usize,
    leq: Vec<bool>,
    meet: Vec<u64>,
    join: Vec<u64>,
    prod: Vec<u64>,
    imp: Vec<u64>,
    limp: Vec<u64>,
    top: u64,
    bot: u64,
}

fn invalid(name: &str, reason: impl Into<String>) -> OracleError {
    OracleError::InvalidAlgebra {
        name: name.to_string(),
        reason: reason.into(),
    }
}

impl FiniteBdrg {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<FiniteBdrg, OracleError> {
        let name = spec.name.as_str();
        let n = spec.size;
        if n == 0 {
            return Err(invalid(name, "empty carrier"));
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &[a, b] in &spec.order {
            if a >= n || b >= n {
                return Err(invalid(name, format!("order pair ({a}, {b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if leq[a * n + k] && leq[k * n + b] {
                        leq[a * n + b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(invalid(
                        name,
                        format!("order is not antisymmetric at {a}, {b}"),
                    ));
                }
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let bound = |a: usize, b: usize, upper: bool| -> Option<u64> {
            let cands: Vec<usize> = (0..n)
                .filter(|&c| {
                    if upper {
                        le(a, c) && le(b, c)
                    } else {
                        le(c, a) && le(c, b)
                    }
                })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&c| {
                    cands
                        .iter()
                        .all(|&d| if upper { le(c, d) } else { le(d, c) })
                })
                .map(|c| c as u64)
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = bound(a, b, false)
                    .ok_or_else(|| invalid(name, format!("{a}, {b} have no meet")))?;
                join[a * n + b] = bound(a, b, true)
                    .ok_or_else(|| invalid(name, format!("{a}, {b} have no join")))?;
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|a| le(a, t)))
            .ok_or_else(|| invalid(name, "no top"))?;
        let bot = (0..n)
            .find(|&b| (0..n).all(|a| le(b, a)))
            .ok_or_else(|| invalid(name, "no bottom"))?;
        if spec.product.len() != n || spec.product.iter().any(|row| row.len() != n) {
            return Err(invalid(name, "product table has the wrong shape"));
        }
        let mut prod = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = spec.product[a][b];
                if v >= n {
                    return Err(invalid(
                        name,
                        format!("product {a} * {b} = {v} out of range"),
                    ));
                }
                prod[a * n + b] = v as u64;
            }
        }
        let big_join = |items: &mut dyn Iterator<Item = usize>| {
            items.fold(bot as u64, |acc, x| join[acc as usize * n + x])
        };
        let mut imp = vec![0; n * n];
        let mut limp = vec![0; n * n];
        for a in 0..n {
            for c in 0..n {
                imp[a * n + c] = big_join(&mut (0..n).filter(|&b| le(prod[a * n + b] as usize, c)));
                limp[c * n + a] =
                    big_join(&mut (0..n).filter(|&b| le(prod[b * n + a] as usize, c)));
            }
        }
        let alg = FiniteBdrg {
            name: spec.name.clone(),
            n,
            leq,
            meet,
            join,
            prod,
            imp,
            limp,
            top: top as u64,
            bot: bot as u64,
        };
        check_laws(&alg).map_err(|reason| invalid(name, reason))?;
        Ok(alg)
    }

    /// Tabulate any algebra, renumbering its elements `0..size`.
    pub fn tabulate<A: Algebra + ?Sized>(alg: &A) -> Result<FiniteBdrg, OracleError> {
        let els = alg.elements();
        let index = |x: u64| els.iter().position(|&e| e == x).expect("closed operation");
        let n = els.len();
        let mut order = Vec::new();
        let mut product = vec![vec![0; n]; n];
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                if alg.leq(a, b) {
                    order.push([i, j]);
                }
                product[i][j] = index(alg.prod(a, b));
            }
        }
        FiniteBdrg::from_spec(&AlgebraSpec {
            name: alg.name(),
            size: n,
            order,
            product,
        })
    }

    pub fn spec(&self) -> AlgebraSpec {
        let n = self.n;
        let mut order = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a * n + b] {
                    order.push([a, b]);
                }
            }
        }
        AlgebraSpec {
            name: self.name.clone(),
            size: n,
            order,
            product: (0..n)
                .map(|a| (0..n).map(|b| self.prod[a * n + b] as usize).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn at(&self, table: &[u64], a: u64, b: u64) -> u64 {
        table[a as usize * self.n + b as usize]
    }
}

impl Algebra for FiniteBdrg {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn elements(&self) -> Vec<u64> {
        (0..self.n as u64).collect()
    }

    fn top(&self) -> u64 {
        self.top
    }

    fn bot(&self) -> u64 {
        self.bot
    }

    fn meet(&self, a: u64, b: u64) -> u64 {
        self.at(&self.meet, a, b)
    }

    fn join(&self, a: u64, b: u64) -> u64 {
        self.at(&self.join, a, b)
    }

    fn imp(&self, a: u64, b: u64) -> u64 {
        self.at(&self.imp, a, b)
    }

    fn limp(&self, a: u64, b: u64) -> u64 {
        self.at(&self.limp, a, b)
    }

    fn prod(&self, a: u64, b: u64) -> u64 {
        self.at(&self.prod, a, b)
    }

    fn leq(&self, a: u64, b: u64) -> bool {
        self.leq[a as usize * self.n + b as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::BinaryFrame;

    fn chain2(product: Vec<Vec<usize>>) -> AlgebraSpec {
        AlgebraSpec {
            name: "chain".into(),
            size: 2,
            order: vec![[0, 1]],
            product,
        }
    }

    #[test]
    fn boolean_chain_has_classical_residuals() {
        let alg = FiniteBdrg::from_spec(&chain2(vec![vec![0, 0], vec![0, 1]])).unwrap();
        assert_eq!(alg.imp(1, 0), 0);
        assert_eq!(alg.imp(0, 0), 1);
        assert_eq!(alg.imp(1, 1), 1);
    }

    #[test]
    fn non_residuated_product_is_rejected() {
        let spec = chain2(vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(
            FiniteBdrg::from_spec(&spec),
            Err(OracleError::InvalidAlgebra { .. })
        ));
    }

    #[test]
    fn non_lattice_order_is_rejected() {
        let spec = AlgebraSpec {
            name: "v".into(),
            size: 3,
            order: vec![[0, 1], [0, 2]],
            product: vec![vec![0; 3]; 3],
        };
        assert!(FiniteBdrg::from_spec(&spec).is_err());
    }

    #[test]
    fn tabulating_a_dual_preserves_it() {
        let frame = BinaryFrame::new(2, &[(0, 1), (1, 1)]).unwrap();
        let dual = frame.dual();
        let table = FiniteBdrg::tabulate(&dual).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(table.imp(a, b), dual.imp(a, b));
                assert_eq!(table.limp(a, b), dual.limp(a, b));
            }
        }
        let spec = table.spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: AlgebraSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
