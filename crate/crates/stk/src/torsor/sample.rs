//! Random triples and words over a finite local ring, for property checks.

use super::{Torsor, TorsorError, Triple};
use crate::ring::{FElem, FiniteRing, XPoly};
use crate::word::relations::relation_instance;
use crate::word::{derived, RelationInstance, RelationKind, Word};
use rand::Rng;

/// An element of `B = A[X^-1] + M[X]` with `X`-exponents in `[-neg, pos]`.
pub fn random_coeff<R: Rng>(ring: &FiniteRing, rng: &mut R, neg: i32, pos: i32) -> XPoly {
    let coeffs: Vec<FElem> =
        (-neg..=pos).map(|e| if e <= 0 { ring.random(rng) } else { ring.random_maximal(rng) }).collect();
    XPoly::from_coeffs(ring.from_int(0), -neg, coeffs)
}

pub fn random_b_word<R: Rng>(tor: &Torsor<XPoly>, ring: &FiniteRing, rng: &mut R, len: usize, neg: i32) -> Word<XPoly> {
    let n = tor.sys.len();
    Word { letters: (0..len).map(|_| (rng.gen_range(0..n), random_coeff(ring, rng, neg, 1))).collect() }
}

/// `(p, h, u)` with `p` a product of `z_gamma(m0 + m1 X, a0 + a1 X)`, `h` a word over
/// `A[X^-1]` and `u` congruent to one.
pub fn random_triple<R: Rng>(
    tor: &Torsor<XPoly>,
    ring: &FiniteRing,
    rng: &mut R,
    p_len: usize,
    h_len: usize,
) -> Result<Triple<XPoly>, TorsorError> {
    let n = tor.sys.len();
    let mut p = Word::empty();
    for _ in 0..p_len {
        let s = XPoly::from_coeffs(ring.from_int(0), 0, vec![ring.random_maximal(rng), ring.random_maximal(rng)]);
        let xi = XPoly::from_coeffs(ring.from_int(0), 0, vec![ring.random(rng), ring.random(rng)]);
        p = p.mul(&derived::z(&tor.sys, rng.gen_range(0..n), &s, &xi));
    }
    let h = Word { letters: (0..h_len).map(|_| (rng.gen_range(0..n), random_coeff(ring, rng, 1, 0))).collect() };
    let u = XPoly::constant(ring.random_maximal(rng).add(&ring.from_int(1)));
    tor.triple_from_p(&p, &h, &u)
}

/// A random element of the graded piece `B_d` (`t = X^-1` of degree one).
pub fn random_graded<R: Rng>(ring: &FiniteRing, rng: &mut R, d: i32) -> XPoly {
    let c = if d >= 0 { ring.random(rng) } else { ring.random_maximal(rng) };
    XPoly::monomial(c, -d)
}

/// A random instance of `kind` on roots at the matching angle.
pub fn random_relation<R: Rng>(
    tor: &Torsor<XPoly>,
    ring: &FiniteRing,
    rng: &mut R,
    kind: RelationKind,
) -> RelationInstance<XPoly> {
    let (d, e) = match kind {
        RelationKind::R1 { d } => (d, d),
        RelationKind::R2 { d, e } | RelationKind::R3Angle { d, e } | RelationKind::R3Perp { d, e } => (d, e),
    };
    let n = tor.sys.len();
    loop {
        let al = rng.gen_range(0..n);
        let be = if matches!(kind, RelationKind::R1 { .. }) { al } else { rng.gen_range(0..n) };
        let (a, b) = (random_graded(ring, rng, d), random_graded(ring, rng, e));
        if let Some(rel) = relation_instance(&tor.sys, &tor.table, kind, al, be, &a, &b) {
            return rel;
        }
    }
}
