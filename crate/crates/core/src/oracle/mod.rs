//! Brute-force semantics: finite residuated lattices, relational frames and
//! their dual algebras, exhaustive validity checks, and first-order frame
//! conditions.
//!
//! Every algebra element is a `u64`. Powerset algebras use bitmasks over
//! worlds; table-based algebras use element indices.

mod catalog;
mod eval;
mod finite;
mod fo;
mod frames;

pub use catalog::catalog;
pub use eval::{
    check_laws, evaluate, find_counterexample, validate, validate_quasi, Assignment, Compiled,
    Slots, DEFAULT_BUDGET,
};
pub use finite::{AlgebraSpec, FiniteBdrg};
pub use fo::{fo_binary, fo_ternary};
pub use frames::{
    enumerate_binary, enumerate_ternary, sample_binary, sample_ternary, BinaryFrame,
    PowersetAlgebra, TernaryFrame,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("assignment space of {needed} exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("invalid algebra `{name}`: {reason}")]
    InvalidAlgebra { name: String, reason: String },
    #[error("frame size {size} is out of range for {what}")]
    FrameSize { size: usize, what: &'static str },
    #[error("formula contains an atom the algebra cannot interpret: {0}")]
    Uninterpretable(String),
}

/// A finite bounded distributive lattice with a product and its two residuals.
pub trait Algebra: Sync {
    fn name(&self) -> String;
    /// The carrier, in a fixed order.
    fn elements(&self) -> Vec<u64>;
    fn top(&self) -> u64;
    fn bot(&self) -> u64;
    fn meet(&self, a: u64, b: u64) -> u64;
    fn join(&self, a: u64, b: u64) -> u64;
    /// `a -> b`, the right residual of the product.
    fn imp(&self, a: u64, b: u64) -> u64;
    /// `a <- b`, the left residual of the product.
    fn limp(&self, a: u64, b: u64) -> u64;
    fn prod(&self, a: u64, b: u64) -> u64;
    fn leq(&self, a: u64, b: u64) -> bool;

    /// Completely join-irreducible elements: the range of nominals.
    fn join_irreducibles(&self) -> Vec<u64> {
        let els = self.elements();
        els.iter()
            .copied()
            .filter(|&a| {
                if a == self.bot() {
                    return false;
                }
                let below = els
                    .iter()
                    .copied()
                    .filter(|&b| b != a && self.leq(b, a))
                    .fold(self.bot(), |acc, b| self.join(acc, b));
                below != a
            })
            .collect()
    }

    /// Completely meet-irreducible elements: the range of conominals.
    fn meet_irreducibles(&self) -> Vec<u64> {
        let els = self.elements();
        els.iter()
            .copied()
            .filter(|&a| {
                if a == self.top() {
                    return false;
                }
                let above = els
                    .iter()
                    .copied()
                    .filter(|&b| b != a && self.leq(a, b))
                    .fold(self.top(), |acc, b| self.meet(acc, b));
                above != a
            })
            .collect()
    }
}
