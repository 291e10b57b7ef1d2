//! Derived elements: `w`, `h`, `z`, `c` and the two symbol families.

use super::Word;
use crate::ring::{RingError, Scalar};
use crate::rootsys::{Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedKind {
    W,
    H,
    Z,
    C,
    SteinbergSymbol,
    DennisStein,
}

pub fn x<S: Scalar>(alpha: Root, s: S) -> Word<S> {
    Word::gen(alpha, s)
}

/// `w_a(s) = x_a(s) x_{-a}(-s^-1) x_a(s)`.
pub fn w<S: Scalar>(sys: &RootSystem, alpha: Root, s: &S) -> Result<Word<S>, RingError> {
    let si = s.inv()?;
    Ok(Word { letters: vec![(alpha, s.clone()), (sys.neg(alpha), si.neg()), (alpha, s.clone())] })
}

/// `h_a(s) = w_a(s) w_a(-1)`.
pub fn h<S: Scalar>(sys: &RootSystem, alpha: Root, s: &S) -> Result<Word<S>, RingError> {
    Ok(w(sys, alpha, s)?.mul(&w(sys, alpha, &s.int(-1))?))
}

/// `z_a(s, xi) = x_{-a}(-xi) x_a(s) x_{-a}(xi)`.
pub fn z<S: Scalar>(sys: &RootSystem, alpha: Root, s: &S, xi: &S) -> Word<S> {
    Word::conj(&Word::gen(alpha, s.clone()), &Word::gen(sys.neg(alpha), xi.clone()))
}

/// `c_a(s, t) = [x_a(s), x_{-a}(t)]`.
pub fn c<S: Scalar>(sys: &RootSystem, alpha: Root, s: &S, t: &S) -> Word<S> {
    Word::comm(&Word::gen(alpha, s.clone()), &Word::gen(sys.neg(alpha), t.clone()))
}

/// `{s, t}_a = h_a(st) h_a(s)^-1 h_a(t)^-1`.
pub fn sym<S: Scalar>(sys: &RootSystem, alpha: Root, s: &S, t: &S) -> Result<Word<S>, RingError> {
    Ok(Word::product([&h(sys, alpha, &s.mul(t))?, &h(sys, alpha, s)?.inv(), &h(sys, alpha, t)?.inv()]))
}

/// `<a, b>_al = x_{-al}(-b/(1+ab)) x_al(a) x_{-al}(b) x_al(-a/(1+ab)) h_al(1+ab)^-1`.
pub fn ds<S: Scalar>(sys: &RootSystem, alpha: Root, a: &S, b: &S) -> Result<Word<S>, RingError> {
    let u = a.mul(b).add(&a.one());
    let ui = u.inv()?;
    let na = sys.neg(alpha);
    let head =
        Word { letters: vec![(na, b.mul(&ui).neg()), (alpha, a.clone()), (na, b.clone()), (alpha, a.mul(&ui).neg())] };
    Ok(head.mul(&h(sys, alpha, &u)?.inv()))
}
