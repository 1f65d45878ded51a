//! First-order frame conditions of the characteristic sequents, evaluated
//! directly on finite frames.

use super::{BinaryFrame, TernaryFrame};
use crate::axioms::Axiom;

fn all1(n: usize, f: impl Fn(usize) -> bool) -> bool {
    (0..n).all(f)
}

fn all2(n: usize, f: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|x| (0..n).all(|y| f(x, y)))
}

fn all3(n: usize, f: impl Fn(usize, usize, usize) -> bool) -> bool {
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f(x, y, z))))
}

fn any1(n: usize, f: impl Fn(usize) -> bool) -> bool {
    (0..n).any(f)
}

fn imp(a: bool, b: bool) -> bool {
    !a || b
}

/// The binary relational condition defined by `axiom`.
pub fn fo_binary(axiom: Axiom, f: &BinaryFrame) -> bool {
    let n = f.n;
    let r = |x, y| f.r(x, y);
    match axiom {
        Axiom::I | Axiom::Tr => true,
        Axiom::MP => all1(n, |x| r(x, x)),
        Axiom::W => all2(n, |x, y| imp(r(y, x), x == y)),
        Axiom::RT => all3(n, |x, y, z| imp(r(x, y) && r(y, z), r(x, z))),
        Axiom::B => all3(n, |x, y, z| imp(r(y, x) && r(z, y), r(z, x) && r(y, x))),
        Axiom::BPrime => all3(n, |x, y, z| imp(r(y, x) && r(z, y), r(y, x) && r(z, x))),
        Axiom::C => all3(n, |x, y, z| {
            imp(r(y, x) && r(z, y), r(x, x) && x == y && r(z, x))
        }),
        Axiom::Fr => all3(n, |x, y, z| {
            imp(r(y, x) && r(z, y), r(x, x) && r(y, x) && r(z, x))
        }),
        Axiom::WPrime => all2(n, |x, y| imp(r(y, x), r(x, x))),
        Axiom::Sym => all2(n, |x, y| imp(r(x, y), r(y, x))),
        Axiom::Euc => all3(n, |x, y, z| imp(r(x, y) && r(x, z), r(y, z))),
        Axiom::D => all1(n, |x| any1(n, |y| r(x, y))),
    }
}

/// The ternary relational condition defined by `axiom`; `S z x y` reads
/// "`z` is a product of `x` and `y`".
pub fn fo_ternary(axiom: Axiom, f: &TernaryFrame) -> bool {
    let n = f.n;
    let s = |z, x, y| f.s(z, x, y);
    match axiom {
        Axiom::I => all3(n, |x, y, z| imp(s(z, x, y), z == x)),
        Axiom::Tr => all3(n, |x, y, z| {
            imp(s(z, x, y), any1(n, |u| s(z, u, y) && s(u, x, y)))
        }),
        Axiom::MP => all1(n, |x| s(x, x, x)),
        Axiom::W => all3(n, |x, y, z| imp(s(z, x, y), z == y)),
        Axiom::RT => all3(n, |x, y, z| {
            all2(n, |u, v| imp(s(u, x, v) && s(v, y, z), s(u, x, z)))
        }),
        Axiom::B => all3(n, |x, y, z| {
            all2(n, |u, w| {
                imp(
                    s(u, x, w) && s(w, y, z),
                    any1(n, |v| s(u, v, z) && s(v, x, y)),
                )
            })
        }),
        Axiom::BPrime => all3(n, |x, y, z| {
            all2(n, |u, w| {
                imp(
                    s(u, x, w) && s(w, y, z),
                    any1(n, |v| s(u, v, y) && s(v, x, z)),
                )
            })
        }),
        Axiom::C => all3(n, |x, y, z| {
            all2(n, |u, w| {
                imp(
                    s(u, x, w) && s(w, y, z),
                    any1(n, |v| s(u, y, v) && s(v, x, z)),
                )
            })
        }),
        Axiom::Fr => all3(n, |x, y, z| {
            all2(n, |u, w| {
                imp(
                    s(u, x, w) && s(w, y, z),
                    any1(n, |v0| {
                        any1(n, |v1| s(u, v0, v1) && s(v0, x, y) && s(v1, x, z))
                    }),
                )
            })
        }),
        Axiom::WPrime => all3(n, |x, y, z| {
            imp(s(z, x, y), any1(n, |u| s(z, x, u) && s(u, x, y)))
        }),
        Axiom::Sym => all3(n, |x, y, v| imp(s(v, y, x), s(x, x, y))),
        Axiom::Euc => all3(n, |x, y, z| {
            all1(n, |u| {
                imp(s(u, x, z) && any1(n, |v| s(v, y, z)), s(u, x, y))
            })
        }),
        Axiom::D => all1(n, |x| any1(n, |y| any1(n, |z| s(z, y, x)))),
    }
}
