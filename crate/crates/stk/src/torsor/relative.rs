//! Left multiplication of classes `[p, h, u]` by relative elements over `A[X]`,
//! realised by rewriting each element as a word over `B` and acting with it.

use super::{jet, Torsor, TorsorError, TripleT};
use crate::relgrp::Element;
use crate::ring::LocalPair;
use crate::rootsys::{Companion, Root};
use crate::word::{derived, Word};

fn in_m_poly<S: LocalPair>(s: &S) -> bool {
    s.x_range().is_none_or(|(lo, _)| lo >= 0) && s.in_m()
}

fn in_a_poly<S: LocalPair>(s: &S) -> bool {
    s.x_range().is_none_or(|(lo, _)| lo >= 0)
}

impl<S: LocalPair> Torsor<S> {
    /// A word over `B` with the same image as `e`, built by induction on the
    /// `X`-degree of the conjugating argument.
    pub fn expand_relative(&self, e: &Element<S>) -> Result<Word<S>, TorsorError> {
        match e {
            Element::X { root, f } => {
                if !in_m_poly(f) {
                    return Err(TorsorError::Alphabet(format!("x on root {root}")));
                }
                Ok(Word::gen(*root, f.clone()))
            }
            Element::Z { root, s, xi } => {
                if !in_m_poly(s) || !in_a_poly(xi) {
                    return Err(TorsorError::Alphabet(format!("z on root {root}")));
                }
                self.expand_z(*root, s, xi)
            }
            Element::C { root, s, t } => {
                if !in_m_poly(s) || !in_a_poly(t) {
                    return Err(TorsorError::Alphabet(format!("c on root {root}")));
                }
                // c(s, t) = x(s) z(-s, -t)
                Ok(Word::gen(*root, s.clone()).mul(&self.expand_z(*root, &s.neg(), &t.neg())?))
            }
        }
    }

    fn expand_z(&self, alpha: Root, f: &S, xi: &S) -> Result<Word<S>, TorsorError> {
        if xi.constant_in_x() {
            return Ok(derived::z(&self.sys, alpha, f, xi));
        }
        let a = xi.x_component(0);
        let rest = xi.sub(&a).mul(&self.proto.x_monomial(-1)?);
        let inner = self.expand_zx(alpha, f, &rest)?;
        if a.is_zero() {
            return Ok(inner);
        }
        let na = self.sys.neg(alpha);
        Ok(Word::conj(&inner, &Word::gen(na, a)))
    }

    /// `z_alpha(f, X xi)` through the eight-factor expansion along `alpha = a1 + b1`.
    fn expand_zx(&self, alpha: Root, f: &S, xi: &S) -> Result<Word<S>, TorsorError> {
        let sys = &self.sys;
        let b1 = sys.acute_companion(alpha, Companion::Acute)?;
        let a1 = sys.sub(alpha, b1).ok_or(crate::rootsys::RootError::NoCompanion)?;
        let eps = f.int(self.table.get(a1, b1) as i64);
        let (x1, xm1) = (self.proto.x_monomial(1)?, self.proto.x_monomial(-1)?);
        let fx = f.mul(&x1);
        let fx2 = fx.mul(&x1);
        let xi2 = xi.mul(xi);
        let g = |r: Root, v: S| Word::gen(r, v);
        Ok(Word::product([
            &g(a1, eps.mul(&fx)),
            &g(sys.neg(b1), fx2.mul(xi).neg()),
            &g(b1, f.mul(xi)),
            &g(alpha, f.clone()),
            &self.expand_z(a1, &eps.mul(&fx).neg(), &eps.mul(xi).neg())?,
            &g(sys.neg(a1), eps.mul(&fx).mul(&xi2).neg()),
            &g(sys.neg(alpha), fx2.mul(&xi2).neg()),
            &derived::z(sys, sys.neg(b1), &fx2.mul(xi), &xm1.neg()),
        ]))
    }

    /// `p1 [p, h, u]` for `p1` a product of relative elements over `A[X]`.
    pub fn act_relative(&self, t: &TripleT<S>, p1: &[Element<S>]) -> Result<TripleT<S>, TorsorError> {
        let mut w = Word::empty();
        for e in p1 {
            w = w.mul(&self.expand_relative(e)?);
        }
        let moved = self.act(&self.from_t(t)?, &w)?;
        self.to_t(&moved)
    }

    /// The class `[p1 p, h, u]` the action is expected to produce.
    pub fn relative_target(&self, t: &TripleT<S>, p1: &[Element<S>]) -> Result<TripleT<S>, TorsorError> {
        let pw = Word::product(p1.iter().map(|e| e.word(&self.sys)).collect::<Vec<_>>().iter());
        Ok(TripleT { p: pw.mul(&t.p), h: t.h.clone(), u: t.u.clone(), p0: jet::eval_at_zero(&pw)?.mul(&t.p0) })
    }
}
