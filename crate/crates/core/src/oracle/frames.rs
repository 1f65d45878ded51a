use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Algebra, OracleError};

/// Largest frame size with an exhaustive binary enumeration.
pub const MAX_EXHAUSTIVE_BINARY: usize = 4;
/// Largest frame size with an exhaustive ternary enumeration.
pub const MAX_EXHAUSTIVE_TERNARY: usize = 2;

/// A set of worlds `0..n` with a binary relation; bit `x * n + y` of `rel`
/// means `R x y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryFrame {
    pub n: usize,
    pub rel: u64,
}

impl BinaryFrame {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<BinaryFrame, OracleError> {
        if n == 0 || n * n > 64 {
            return Err(OracleError::FrameSize {
                size: n,
                what: "binary frames",
            });
        }
        let mut rel = 0;
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(OracleError::FrameSize {
                    size: n,
                    what: "a pair of this frame",
                });
            }
            rel |= 1 << (x * n + y);
        }
        Ok(BinaryFrame { n, rel })
    }

    pub fn r(&self, x: usize, y: usize) -> bool {
        self.rel >> (x * self.n + y) & 1 == 1
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .filter(|b| self.rel >> b & 1 == 1)
            .map(|b| (b / n, b % n))
            .collect()
    }

    /// The powerset algebra of the frame.
    pub fn dual(&self) -> PowersetAlgebra {
        let n = self.n;
        let mut succ = vec![0u64; n];
        let mut pred = vec![0u64; n];
        for (x, y) in self.pairs() {
            succ[x] |= 1 << y;
            pred[y] |= 1 << x;
        }
        PowersetAlgebra {
            n,
            label: format!("binary dual {:?}", self.pairs()),
            ops: PowersetOps::Binary { succ, pred },
        }
    }
}

/// A set of worlds `0..n` with a ternary relation; bit `(z * n + x) * n + y`
/// of `rel` means `S z x y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TernaryFrame {
    pub n: usize,
    pub rel: u64,
}

impl TernaryFrame {
    pub fn new(n: usize, triples: &[(usize, usize, usize)]) -> Result<TernaryFrame, OracleError> {
        if n == 0 || n * n * n > 64 {
            return Err(OracleError::FrameSize {
                size: n,
                what: "ternary frames",
            });
        }
        let mut rel = 0;
        for &(z, x, y) in triples {
            if z >= n || x >= n || y >= n {
                return Err(OracleError::FrameSize {
                    size: n,
                    what: "a triple of this frame",
                });
            }
            rel |= 1 << ((z * n + x) * n + y);
        }
        Ok(TernaryFrame { n, rel })
    }

    pub fn s(&self, z: usize, x: usize, y: usize) -> bool {
        self.rel >> ((z * self.n + x) * self.n + y) & 1 == 1
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        (0..n * n * n)
            .filter(|b| self.rel >> b & 1 == 1)
            .map(|b| (b / (n * n), b / n % n, b % n))
            .collect()
    }

    /// The powerset algebra of the frame.
    pub fn dual(&self) -> PowersetAlgebra {
        let n = self.n;
        let mut heads = vec![0u64; n * n];
        for (z, x, y) in self.triples() {
            heads[x * n + y] |= 1 << z;
        }
        PowersetAlgebra {
            n,
            label: format!("ternary dual {:?}", self.triples()),
            ops: PowersetOps::Ternary { heads },
        }
    }
}

#[derive(Clone, Debug)]
enum PowersetOps {
    /// Successor and predecessor sets of every world.
    Binary { succ: Vec<u64>, pred: Vec<u64> },
    /// `heads[x * n + y]` is the set of `z` with `S z x y`.
    Ternary { heads: Vec<u64> },
}

/// The dual algebra of a binary or ternary frame; elements are bitmasks.
#[derive(Clone, Debug)]
pub struct PowersetAlgebra {
    n: usize,
    label: String,
    ops: PowersetOps,
}

impl PowersetAlgebra {
    pub fn worlds(&self) -> usize {
        self.n
    }

    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    fn worlds_where(&self, mut keep: impl FnMut(usize) -> bool) -> u64 {
        (0..self.n)
            .filter(|&w| keep(w))
            .fold(0, |acc, w| acc | 1 << w)
    }
}

fn members(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

impl Algebra for PowersetAlgebra {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn elements(&self) -> Vec<u64> {
        (0..=self.full()).collect()
    }

    fn top(&self) -> u64 {
        self.full()
    }

    fn bot(&self) -> u64 {
        0
    }

    fn meet(&self, a: u64, b: u64) -> u64 {
        a & b
    }

    fn join(&self, a: u64, b: u64) -> u64 {
        a | b
    }

    fn imp(&self, a: u64, b: u64) -> u64 {
        match &self.ops {
            PowersetOps::Binary { succ, .. } => self.worlds_where(|w| succ[w] & a & !b == 0),
            PowersetOps::Ternary { heads } => {
                let n = self.n;
                self.worlds_where(|w| members(a).all(|u| heads[u * n + w] & !b == 0))
            }
        }
    }

    fn limp(&self, a: u64, b: u64) -> u64 {
        match &self.ops {
            PowersetOps::Binary { pred, .. } => {
                self.worlds_where(|w| a >> w & 1 == 1 || pred[w] & b == 0)
            }
            PowersetOps::Ternary { heads } => {
                let n = self.n;
                self.worlds_where(|w| members(b).all(|u| heads[w * n + u] & !a == 0))
            }
        }
    }

    fn prod(&self, a: u64, b: u64) -> u64 {
        match &self.ops {
            PowersetOps::Binary { pred, .. } => {
                self.worlds_where(|w| a >> w & 1 == 1 && pred[w] & b != 0)
            }
            PowersetOps::Ternary { heads } => {
                let n = self.n;
                let mut out = 0;
                for u in members(a) {
                    for v in members(b) {
                        out |= heads[u * n + v];
                    }
                }
                out
            }
        }
    }

    fn leq(&self, a: u64, b: u64) -> bool {
        a & !b == 0
    }

    fn join_irreducibles(&self) -> Vec<u64> {
        (0..self.n).map(|w| 1 << w).collect()
    }

    fn meet_irreducibles(&self) -> Vec<u64> {
        (0..self.n).map(|w| self.full() & !(1 << w)).collect()
    }
}

/// Every binary frame on `n` worlds, in order of the relation bitmask.
pub fn enumerate_binary(n: usize) -> Result<impl Iterator<Item = BinaryFrame>, OracleError> {
    if n == 0 || n > MAX_EXHAUSTIVE_BINARY {
        return Err(OracleError::FrameSize {
            size: n,
            what: "exhaustive binary enumeration",
        });
    }
    Ok((0..1u64 << (n * n)).map(move |rel| BinaryFrame { n, rel }))
}

/// Every ternary frame on `n` worlds, in order of the relation bitmask.
pub fn enumerate_ternary(n: usize) -> Result<impl Iterator<Item = TernaryFrame>, OracleError> {
    if n == 0 || n > MAX_EXHAUSTIVE_TERNARY {
        return Err(OracleError::FrameSize {
            size: n,
            what: "exhaustive ternary enumeration",
        });
    }
    Ok((0..1u64 << (n * n * n)).map(move |rel| TernaryFrame { n, rel }))
}

fn random_mask(rng: &mut ChaCha8Rng, bits: usize) -> u64 {
    let raw: u64 = rng.gen();
    if bits >= 64 {
        raw
    } else {
        raw & ((1 << bits) - 1)
    }
}

/// `count` binary frames on `n` worlds drawn uniformly with a seeded generator.
pub fn sample_binary(n: usize, count: usize, seed: u64) -> Result<Vec<BinaryFrame>, OracleError> {
    if n == 0 || n * n > 64 {
        return Err(OracleError::FrameSize {
            size: n,
            what: "binary frames",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| BinaryFrame {
            n,
            rel: random_mask(&mut rng, n * n),
        })
        .collect())
}

/// `count` ternary frames on `n` worlds drawn uniformly with a seeded generator.
pub fn sample_ternary(n: usize, count: usize, seed: u64) -> Result<Vec<TernaryFrame>, OracleError> {
    if n == 0 || n * n * n > 64 {
        return Err(OracleError::FrameSize {
            size: n,
            what: "ternary frames",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| TernaryFrame {
            n,
            rel: random_mask(&mut rng, n * n * n),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{check_laws, validate};
    use crate::syntax::{parse_inequality, Language};

    #[test]
    fn reflexive_point() {
        let alg = BinaryFrame::new(1, &[(0, 0)]).unwrap().dual();
        assert_eq!(alg.imp(1, 1), 1);
        assert_eq!(alg.imp(1, 0), 0);
    }

    #[test]
    fn irreflexive_point_makes_implication_vacuous() {
        let alg = BinaryFrame::new(1, &[]).unwrap().dual();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(alg.imp(a, b), 1);
            }
        }
    }

    #[test]
    fn ternary_duals_of_tiny_frames() {
        let alg = TernaryFrame::new(1, &[(0, 0, 0)]).unwrap().dual();
        assert_eq!(alg.prod(1, 1), 1);
        let empty = TernaryFrame::new(2, &[]).unwrap().dual();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(empty.prod(a, b), 0);
                assert_eq!(empty.imp(a, b), 3);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_binary(2).unwrap().count(), 16);
        assert_eq!(enumerate_binary(3).unwrap().count(), 512);
        assert_eq!(enumerate_ternary(1).unwrap().count(), 2);
        assert!(enumerate_ternary(3).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(
            sample_binary(4, 10, 7).unwrap(),
            sample_binary(4, 10, 7).unwrap()
        );
        assert_ne!(
            sample_ternary(3, 10, 7).unwrap(),
            sample_ternary(3, 10, 8).unwrap()
        );
    }

    #[test]
    fn duals_satisfy_the_laws() {
        for f in enumerate_binary(2).unwrap() {
            check_laws(&f.dual()).unwrap();
        }
        for f in enumerate_ternary(2).unwrap() {
            check_laws(&f.dual()).unwrap();
        }
        for f in sample_binary(3, 40, 1).unwrap() {
            check_laws(&f.dual()).unwrap();
        }
    }

    #[test]
    fn left_weakening_holds_on_every_binary_dual() {
        let wl = parse_inequality("p * q |- p", Language::Product).unwrap();
        for f in enumerate_binary(3).unwrap() {
            assert!(validate(&f.dual(), &wl).unwrap());
        }
    }
}
