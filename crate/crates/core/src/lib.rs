//! Proof-theoretic workbench for strict implication logics and the
//! distributive non-associative Lambek calculus.
//!
//! The crate covers the object syntax, the inductive-inequality classifier,
//! the ALBA reduction to pure quasi-inequalities, the ALC calculus computing
//! product-language correspondents, structural rule synthesis, cut-free
//! sequent proof search, and brute-force semantic oracles over finite
//! algebras and frames.

pub mod alba;
pub mod alc;
pub mod axioms;
pub mod classify;
pub mod oracle;
pub mod prover;
pub mod repro;
pub mod syntax;
pub mod synth;
