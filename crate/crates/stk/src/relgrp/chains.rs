//! The two derivations showing orthogonal commutation relations of high degree
//! follow from lower-degree ones.

use super::RelGrpError;
use crate::constants::ConstantTable;
use crate::ring::LocalPair;
use crate::rootsys::{Companion, Root, RootSystem};
use crate::word::{RelationKind, Word};

#[derive(Clone, Debug)]
pub struct ChainStep<S> {
    pub word: Word<S>,
    /// Relations used to pass from the previous step to this one.
    pub cites: Vec<RelationKind>,
}

#[derive(Clone, Debug)]
pub struct DerivationChain<S> {
    pub alpha: Root,
    pub beta: Root,
    pub gamma: Root,
    pub steps: Vec<ChainStep<S>>,
}

impl<S: LocalPair> DerivationChain<S> {
    pub fn cited(&self) -> Vec<RelationKind> {
        let mut all: Vec<RelationKind> = self.steps.iter().flat_map(|s| s.cites.iter().copied()).collect();
        all.sort_by_key(|k| format!("{k}"));
        all.dedup();
        all
    }
}

/// Derivation of `[x_alpha(a t^d), x_gamma(b t^e)] = 1` for orthogonal `alpha`, `gamma`.
///
/// With `0 < d <= e` the chain rewrites `x_{alpha+beta+gamma}(-e1 e2 a b t^e)` until the
/// target commutator appears as a factor; with `d <= 0 <= e` it rewrites the commutator
/// to the identity. Coefficients `a`, `b` carry no `t`; `t = X^-1`.
#[allow(clippy::too_many_arguments)]
pub fn superfluous_chain<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    alpha: Root,
    gamma: Root,
    d: i32,
    e: i32,
    a: &S,
    b: &S,
) -> Result<DerivationChain<S>, RelGrpError> {
    if sys.pairing(alpha, gamma) != 0 || alpha == gamma || sys.add(alpha, gamma).is_some() {
        return Err(RelGrpError::Configuration("alpha and gamma must be orthogonal".into()));
    }
    let beta = sys.acute_companion(alpha, Companion::ObtusePair(gamma))?;
    let root = |r: Option<Root>| r.ok_or_else(|| RelGrpError::Configuration("missing root".into()));
    let bg = root(sys.add(beta, gamma))?;
    let ab = root(sys.add(alpha, beta))?;
    let abg = root(sys.add(ab, gamma))?;
    let nb = sys.neg(beta);
    let n = |x: Root, y: Root| a.int(table.get(x, y) as i64);
    let (e1, e2, d1) = (n(beta, gamma), n(alpha, bg), n(alpha, beta));
    let t = |k: i32| a.x_monomial(-k);
    let x = |r: Root, v: S| Word::gen(r, v);
    let step = |word: Word<S>, cites: Vec<RelationKind>| ChainStep { word, cites };
    use RelationKind::*;
    let steps = if 0 < d && d <= e {
        let top = x(abg, e1.mul(&e2).mul(a).mul(b).mul(&t(e)?).neg());
        let xbg = x(bg, e1.mul(b).mul(&t(e - d)?));
        let xnb = x(nb, t(d)?);
        let xab = x(ab, d1.mul(a).neg());
        let xg = x(gamma, b.mul(&t(e)?));
        let xa = x(alpha, a.mul(&t(d)?));
        let comm_ga = Word::comm(&xg, &xa);
        vec![
            step(top.clone(), vec![]),
            step(Word::comm(&xbg, &Word::comm(&xnb, &xab)), vec![R2 { d, e: 0 }, R2 { d, e: e - d }]),
            step(Word::comm(&Word::comm(&xbg, &xnb), &Word::lconj(&xnb, &xab)), vec![R3Perp { d: 0, e: e - d }]),
            step(
                Word::lconj(&xnb, &Word::comm(&x(gamma, b.mul(&t(e)?).neg()), &xab)),
                vec![R2 { d: e - d, e: d }, R3Angle { d, e }],
            ),
            step(Word::lconj(&xnb, &Word::comm(&xbg, &xa)), vec![R2 { d: e, e: 0 }, R2 { d: e - d, e: d }]),
            step(Word::comm(&xg.mul(&xbg), &xa), vec![R2 { d: e - d, e: d }, R3Angle { d, e: d }]),
            step(Word::lconj(&xg, &top).mul(&comm_ga), vec![R2 { d: e - d, e: d }]),
            step(top.mul(&comm_ga), vec![R3Angle { d: e, e }]),
        ]
    } else if d <= 0 && 0 <= e && e > 0 {
        let xa = x(alpha, a.mul(&t(d)?));
        let xbg = x(bg, b.mul(&t(e - 1)?));
        let xnb = x(nb, e1.mul(&t(1)?).neg());
        vec![
            step(Word::comm(&xa, &x(gamma, b.mul(&t(e)?))), vec![]),
            step(Word::comm(&xa, &Word::comm(&xbg, &xnb)), vec![R2 { d: e - 1, e: 1 }]),
            step(Word::comm(&Word::comm(&xa, &xbg), &Word::lconj(&xbg, &xnb)), vec![R3Angle { d, e: 1 }]),
            step(
                Word::lconj(&xbg, &Word::comm(&x(abg, e2.mul(a).mul(b).mul(&t(d + e - 1)?)), &xnb)),
                vec![R2 { d, e: e - 1 }, R3Angle { d: e - 1, e: d + e - 1 }],
            ),
            step(Word::empty(), vec![R3Perp { d: 1, e: d + e - 1 }]),
        ]
    } else {
        return Err(RelGrpError::Configuration(format!("degrees ({d}, {e}) outside both regimes")));
    };
    Ok(DerivationChain { alpha, beta, gamma, steps })
}
