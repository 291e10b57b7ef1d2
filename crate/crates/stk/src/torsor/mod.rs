//! The set of triples `(g, h, u)` on which `St(B)`, `B = A[X^-1] + M[X]`, acts, the
//! operators generating that action, and the factorization and pullback it yields.
//!
//! Every check here is made on matrix images; equivalence of triples is the image
//! shadow of the right `G_M^0` action.

pub mod jet;
pub mod lemmas;
pub mod relative;
pub mod sample;

use crate::constants::ConstantTable;
use crate::oracle::{Matrix, MatrixRep, OracleError, Predicate};
use crate::ring::{LocalPair, RingError, Scalar};
use crate::rootsys::{Root, RootError, RootSystem};
use crate::word::{derived, DegreeError, Reducer, Word};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsorError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("coefficient outside B = A[X^-1] + M[X] on root {0}")]
    NotInB(Root),
    #[error("coefficient outside A + XM[X] on root {0}")]
    NotNonNegativePart(Root),
    #[error("element has negative powers of X where a polynomial was required")]
    NotNonNegative,
    #[error("u is not congruent to 1 modulo M")]
    BadUnit,
    #[error("bookkeeping of the value at X = 0 failed: {0}")]
    TrackingLost(String),
    #[error("images disagree over the Laurent ring")]
    ImagesDisagree,
    #[error("factor outside the relative alphabet: {0}")]
    Alphabet(String),
}

/// Root system, structure constants, representation and a scalar prototype.
pub struct Torsor<S> {
    pub sys: Arc<RootSystem>,
    pub table: ConstantTable,
    pub rep: MatrixRep,
    pub proto: S,
    /// Root indexing the Steinberg symbols `{X, u}`.
    pub symbol_root: Root,
}

/// A representative `(g, h, u)`; `p0` is a word over `A` with the image of `p(g, h, u)` at `X = 0`.
#[derive(Clone, Debug)]
pub struct Triple<S: Scalar> {
    pub g: Word<S>,
    pub h: Word<S>,
    pub u: S,
    pub p0: Word<S>,
    g_img: Matrix<S>,
    h_img: Matrix<S>,
}

impl<S: LocalPair> Triple<S> {
    pub fn g_image(&self) -> &Matrix<S> {
        &self.g_img
    }

    pub fn h_image(&self) -> &Matrix<S> {
        &self.h_img
    }

    /// Image of `p(g, h, u) = g h {X, u}`; the symbol has trivial image.
    pub fn p_image(&self) -> Matrix<S> {
        self.g_img.mul(&self.h_img)
    }
}

/// `[p, h, u]` in the second description of the same set of classes.
#[derive(Clone, Debug)]
pub struct TripleT<S> {
    pub p: Word<S>,
    pub h: Word<S>,
    pub u: S,
    pub p0: Word<S>,
}

/// Output of [`Torsor::factorize_b`]: `input = p * h` at image level.
#[derive(Clone, Debug)]
pub struct BFactorization<S> {
    pub p: Word<S>,
    pub h: Word<S>,
    pub u: S,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Certificate {
    pub product_matches: bool,
    pub p_polynomial: bool,
    pub p_identity_mod_m: bool,
    pub h_inverse_polynomial: bool,
    pub u_congruent: bool,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.product_matches
            && self.p_polynomial
            && self.p_identity_mod_m
            && self.h_inverse_polynomial
            && self.u_congruent
    }
}

/// Result of [`Torsor::pullback_check`].
#[derive(Clone, Debug)]
pub struct Pullback<S: Scalar> {
    pub g0: Word<S>,
    /// `None` when `g0` reproduces the common image; otherwise the residual `image(g0)^-1 image(g_plus)`.
    pub residual: Option<Matrix<S>>,
}

impl<S: LocalPair> Torsor<S> {
    pub fn new(sys: Arc<RootSystem>, proto: S) -> Result<Self, TorsorError> {
        let rep = MatrixRep::build(sys.clone())?;
        let table = ConstantTable::from_representation(&rep);
        Ok(Torsor { sys, table, rep, proto, symbol_root: 0 })
    }

    fn img(&self, w: &Word<S>) -> Matrix<S> {
        self.rep.eval(w, &self.proto)
    }

    fn x(&self, e: i32) -> Result<S, TorsorError> {
        Ok(self.proto.x_monomial(e)?)
    }

    /// Steinberg symbol `{s, t}`.
    pub fn symbol(&self, s: &S, t: &S) -> Result<Word<S>, TorsorError> {
        Ok(derived::sym(&self.sys, self.symbol_root, s, t)?)
    }

    /// The base point `[1, 1, 1]`.
    pub fn one(&self) -> Triple<S> {
        let id = Matrix::identity(self.rep.dim, &self.proto);
        Triple {
            g: Word::empty(),
            h: Word::empty(),
            u: self.proto.one(),
            p0: Word::empty(),
            g_img: id.clone(),
            h_img: id,
        }
    }

    /// Representative with `p(g, h, u) = p` for a word `p` over `A[X]` relative to `M[X]`.
    pub fn triple_from_p(&self, p: &Word<S>, h: &Word<S>, u: &S) -> Result<Triple<S>, TorsorError> {
        if !u.sub(&u.one()).in_m() {
            return Err(TorsorError::BadUnit);
        }
        let x = self.x(1)?;
        let g = Word::product([p, &self.symbol(u, &x)?, &h.inv()]);
        let p0 = jet::eval_at_zero(p)?;
        Ok(Triple { g_img: self.img(&g), h_img: self.img(h), g, h: h.clone(), u: u.clone(), p0 })
    }

    /// Moves the value of `p` at zero into `h`, so that `p` lies in `K(A[X], M[X])`.
    pub fn renormalize(&self, t: &Triple<S>) -> Result<Triple<S>, TorsorError> {
        let mut out = t.clone();
        if !t.p0.is_empty() {
            let corr = t.p0.inv();
            for (r, s) in &corr.letters {
                out.h_img.apply_elementary(&self.rep.patterns[*r], s);
            }
            out.h = t.h.mul(&corr);
            out.p0 = Word::empty();
        }
        let p = out.p_image();
        if !p.satisfies(Predicate::EntriesInPoly) || !jet::constant_part(&p).is_identity() {
            return Err(TorsorError::TrackingLost("p is not trivial at X = 0 after renormalizing".into()));
        }
        Ok(out)
    }

    /// The coset value `m` with `p(g, h, u)` in `P_alpha(m)` after renormalizing.
    pub fn coset_value(&self, t: &Triple<S>, alpha: Root) -> Result<S, TorsorError> {
        let t = self.renormalize(t)?;
        jet::p_value(&self.rep, alpha, &t.p_image())
    }

    /// `T_alpha(a X^-1)` for `a` in `A`.
    pub fn t_neg(&self, t: &Triple<S>, alpha: Root, a: &S) -> Result<Triple<S>, TorsorError> {
        if !a.constant_in_x() {
            return Err(TorsorError::NotInB(alpha));
        }
        let mut out = self.renormalize(t)?;
        if a.is_zero() {
            return Ok(out);
        }
        let m = jet::p_value(&self.rep, alpha, &out.p_image())?;
        let v = a.mul(&m).add(&a.one());
        let xm = self.x(-1)?;
        let (left, right) = (a.mul(&xm), a.mul(&xm).div(&v)?.neg());
        out.g_img.apply_elementary_left(&self.rep.patterns[alpha], &left);
        out.g.letters.insert(0, (alpha, left));
        out.h_img.apply_elementary(&self.rep.patterns[alpha], &right);
        out.h.letters.push((alpha, right));
        out.u = out.u.mul(&v);
        let hv = derived::h(&self.sys, alpha, &v)?;
        let c0 = jet::constant_part(&out.p_image()).mul(&self.img(&hv.inv()));
        let unip = jet::peel(&self.rep, &jet::acute_levels(&self.sys, alpha), &c0)?;
        out.p0 = Word::product([&unip, &derived::ds(&self.sys, alpha, a, &m)?, &hv]);
        Ok(out)
    }

    /// `T_alpha(a + Xf)` for a coefficient in `A + XM[X]`.
    pub fn t_pos(&self, t: &Triple<S>, alpha: Root, c: &S) -> Result<Triple<S>, TorsorError> {
        let ok = match c.x_range() {
            None => return Ok(t.clone()),
            Some((lo, hi)) => lo >= 0 && (1..=hi).all(|e| c.x_component(e).in_m()),
        };
        if !ok {
            return Err(TorsorError::NotNonNegativePart(alpha));
        }
        let mut out = t.clone();
        out.g_img.apply_elementary_left(&self.rep.patterns[alpha], c);
        out.g.letters.insert(0, (alpha, c.clone()));
        let a = c.x_component(0);
        if !a.is_zero() {
            out.h_img.apply_elementary(&self.rep.patterns[alpha], &a.neg());
            out.h.letters.push((alpha, a.neg()));
            let mut p0 = vec![(alpha, a.clone())];
            p0.extend(out.p0.letters);
            p0.push((alpha, a.neg()));
            out.p0 = Word { letters: p0 };
        }
        Ok(out)
    }

    /// Action of a word over `B`; letters of degree above one in `X^-1` are first
    /// rewritten by the degree reducer, and the rightmost letter acts first.
    pub fn act(&self, t: &Triple<S>, w: &Word<S>) -> Result<Triple<S>, TorsorError> {
        let high = w.letters.iter().any(|(_, c)| c.x_range().is_some_and(|(lo, _)| lo < -1));
        let w = if high { Reducer::new(&self.sys, &self.table).reduce(w, 1)? } else { w.clone() };
        let x = self.x(1)?;
        let mut cur = t.clone();
        for (r, c) in w.letters.iter().rev() {
            if !c.in_b() {
                return Err(TorsorError::NotInB(*r));
            }
            let neg = c.x_component(-1);
            let pos = c.sub(&neg);
            if !pos.is_zero() {
                cur = self.t_pos(&cur, *r, &pos)?;
            }
            if !neg.is_zero() {
                cur = self.t_neg(&cur, *r, &neg.mul(&x))?;
            }
        }
        Ok(cur)
    }

    /// Image-level equivalence: equal `g` and `u`, and `h1^-1 h2` constant in `X`
    /// and congruent to the identity modulo `M`.
    pub fn equiv(&self, t1: &Triple<S>, t2: &Triple<S>) -> bool {
        if t1.g_img != t2.g_img || t1.u != t2.u {
            return false;
        }
        let d = self.img(&t1.h.inv()).mul(&t2.h_img);
        d.satisfies(Predicate::ConstantInX) && d.satisfies(Predicate::IdentityModM)
    }

    pub fn to_t(&self, t: &Triple<S>) -> Result<TripleT<S>, TorsorError> {
        let x = self.x(1)?;
        Ok(TripleT {
            p: Word::product([&t.g, &t.h, &self.symbol(&x, &t.u)?]),
            h: t.h.inv(),
            u: t.u.clone(),
            p0: t.p0.clone(),
        })
    }

    pub fn from_t(&self, t: &TripleT<S>) -> Result<Triple<S>, TorsorError> {
        let x = self.x(1)?;
        let g = Word::product([&t.p, &t.h, &self.symbol(&t.u, &x)?]);
        let h = t.h.inv();
        Ok(Triple { g_img: self.img(&g), h_img: self.img(&h), g, h, u: t.u.clone(), p0: t.p0.clone() })
    }

    /// `[p, h, u]` for `p` a word over `A[X]`.
    pub fn triple_t(&self, p: &Word<S>, h: &Word<S>, u: &S) -> Result<TripleT<S>, TorsorError> {
        Ok(TripleT { p: p.clone(), h: h.clone(), u: u.clone(), p0: jet::eval_at_zero(p)? })
    }

    /// Splits a word over `B` as `p * h` with `p` over `A[X]` relative to `M[X]` and
    /// `h` over `A[X^-1]`, by acting on the base point.
    pub fn factorize_b(&self, w: &Word<S>) -> Result<BFactorization<S>, TorsorError> {
        let t = self.act(&self.one(), w)?;
        let tt = self.to_t(&t)?;
        let (pi, hi) = (t.p_image(), self.img(&tt.h));
        let certificate = Certificate {
            product_matches: self.img(w) == pi.mul(&hi),
            p_polynomial: pi.satisfies(Predicate::EntriesInPoly),
            p_identity_mod_m: pi.satisfies(Predicate::IdentityModM),
            h_inverse_polynomial: hi.satisfies(Predicate::EntriesInInversePoly),
            u_congruent: t.u.sub(&t.u.one()).in_m(),
        };
        Ok(BFactorization { p: tt.p, h: tt.h, u: t.u, certificate })
    }

    /// Candidate preimage over `A` of an element given over `A[X]` and over `A[X^-1]`.
    pub fn pullback_check(&self, g_plus: &Word<S>, g_minus: &Word<S>) -> Result<Pullback<S>, TorsorError> {
        if g_minus.letters.iter().any(|(_, s)| s.x_range().is_some_and(|(_, hi)| hi > 0)) {
            return Err(TorsorError::Alphabet("second word is not over A[X^-1]".into()));
        }
        let ip = self.img(g_plus);
        if ip != self.img(g_minus) {
            return Err(TorsorError::ImagesDisagree);
        }
        let g0 = jet::eval_at_zero(g_plus)?;
        let i0 = self.img(&g0);
        let residual = if i0 == ip { None } else { Some(self.img(&g0.inv()).mul(&ip)) };
        Ok(Pullback { g0, residual })
    }
}
