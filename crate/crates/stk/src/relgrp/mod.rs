//! Relative subgroups over `A[X]`: generator recognition for the families
//! `P~_alpha(0)` and `K~(alpha, beta)`, the constant-term functional `p_alpha`,
//! and scripted word identities.

pub mod chains;
pub mod decomp;

pub use chains::{superfluous_chain, ChainStep, DerivationChain};
pub use decomp::{conj_p0_decompose, crels_decompose, kdecomp1_factor, zrels_decompose, Identity, P0Case};

use crate::ring::{IdealSpec, LocalPair, RingError};
use crate::rootsys::{AngleClass, Root, RootError, RootSystem};
use crate::word::{derived, Word};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelGrpError {
    #[error("root configuration mismatch: {0}")]
    Configuration(String),
    #[error("factor outside the admissible alphabet: {0}")]
    Alphabet(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenClass {
    P1,
    P2,
    P3,
    P4,
    P5,
    K1,
    K2,
    K3,
    K4,
    K5,
    /// Root subgroup of `Z_+(alpha) \ {alpha - beta}` with coefficient in `M[X]`.
    Z,
    /// Root element with coefficient in `XM[X]` on a root of the `A_2` block.
    XIdeal,
    None,
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A structured generator with explicit arguments.
#[derive(Clone, Debug, PartialEq)]
pub enum Element<S> {
    /// `x_root(f)`
    X { root: Root, f: S },
    /// `z_root(s, xi) = x_root(s)^{x_{-root}(xi)}`
    Z { root: Root, s: S, xi: S },
    /// `c_root(s, t) = [x_root(s), x_{-root}(t)]`
    C { root: Root, s: S, t: S },
}

impl<S: LocalPair> Element<S> {
    pub fn root(&self) -> Root {
        match self {
            Element::X { root, .. } | Element::Z { root, .. } | Element::C { root, .. } => *root,
        }
    }

    pub fn word(&self, sys: &RootSystem) -> Word<S> {
        match self {
            Element::X { root, f } => Word::gen(*root, f.clone()),
            Element::Z { root, s, xi } => derived::z(sys, *root, s, xi),
            Element::C { root, s, t } => derived::c(sys, *root, s, t),
        }
    }

    /// `z_root(s, 0)` is read as `x_root(s)`.
    fn canonical(&self) -> Self {
        match self {
            Element::Z { root, s, xi } if xi.is_zero() => Element::X { root: *root, f: s.clone() },
            e => e.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedFactor<S> {
    pub elem: Element<S>,
    pub class: GenClass,
}

pub fn product_word<S: LocalPair>(sys: &RootSystem, factors: &[ClassifiedFactor<S>]) -> Word<S> {
    let parts: Vec<Word<S>> = factors.iter().map(|f| f.elem.word(sys)).collect();
    Word::product(parts.iter())
}

fn in_poly<S: LocalPair>(x: &S, min_x: i32) -> bool {
    x.x_range().is_none_or(|(lo, _)| lo >= min_x)
}

fn in_mx<S: LocalPair>(x: &S, min_x: i32) -> bool {
    x.in_ideal(IdealSpec::Custom { min_x_degree: Some(min_x) })
}

fn orth(sys: &RootSystem, a: Root, b: Root) -> bool {
    sys.pairing(a, b) == 0
}

fn diff_is_root(sys: &RootSystem, a: Root, b: Root) -> bool {
    matches!(sys.angle_class(a, b), AngleClass::DifferenceIsRoot(_))
}

/// Generator type of `elem` for `P~_alpha(0)`; `c_beta(f, X xi)` is reported with the
/// type of both of its `P2`/`P3` factors.
pub fn classify_p<S: LocalPair>(sys: &RootSystem, alpha: Root, elem: &Element<S>) -> GenClass {
    let na = sys.neg(alpha);
    match elem.canonical() {
        Element::X { root, f } => {
            if root == alpha && in_mx(&f, 0) {
                GenClass::P5
            } else if root == na {
                if in_mx(&f, 2) {
                    GenClass::P4
                } else {
                    GenClass::None
                }
            } else if !orth(sys, alpha, root) && in_mx(&f, 1) {
                GenClass::P1
            } else if diff_is_root(sys, alpha, root) && in_mx(&f, 0) {
                GenClass::P2
            } else if orth(sys, alpha, root) && in_mx(&f, 0) {
                GenClass::P3
            } else {
                GenClass::None
            }
        }
        Element::Z { root, s, xi } => {
            if root == alpha || root == na || !in_poly(&xi, 0) {
                GenClass::None
            } else if !orth(sys, alpha, root) && in_mx(&s, 1) {
                GenClass::P1
            } else if diff_is_root(sys, alpha, root) && in_mx(&s, 0) && in_poly(&xi, 1) {
                GenClass::P2
            } else if orth(sys, alpha, root) && in_mx(&s, 0) {
                GenClass::P3
            } else {
                GenClass::None
            }
        }
        Element::C { root, s, t } => {
            if !in_mx(&s, 0) || !in_poly(&t, 1) {
                GenClass::None
            } else if orth(sys, alpha, root) {
                GenClass::P3
            } else if sys.pairing(alpha, root) > 0 && root != alpha {
                GenClass::P2
            } else {
                GenClass::None
            }
        }
    }
}

/// The `A_2` block spanned by `alpha` and `beta`.
pub fn block(sys: &RootSystem, alpha: Root, beta: Root) -> Result<Vec<Root>, RelGrpError> {
    if sys.pairing(alpha, beta) != 1 || alpha == beta {
        return Err(RelGrpError::Configuration("alpha and beta must form an acute angle".into()));
    }
    let d = sys.sub(alpha, beta).ok_or_else(|| RelGrpError::Configuration("alpha - beta is not a root".into()))?;
    Ok(vec![alpha, beta, d, sys.neg(alpha), sys.neg(beta), sys.neg(d)])
}

/// Lowest-index root outside the block at an acute angle with `alpha`.
pub fn default_delta(sys: &RootSystem, alpha: Root, beta: Root) -> Result<Root, RelGrpError> {
    let psi = block(sys, alpha, beta)?;
    (0..sys.len())
        .find(|r| !psi.contains(r) && sys.pairing(alpha, *r) == 1)
        .ok_or_else(|| RelGrpError::Configuration("no admissible delta".into()))
}

/// Generator type of `elem` for `K~(alpha, beta)` with fixed `delta`.
pub fn classify_k<S: LocalPair>(
    sys: &RootSystem,
    alpha: Root,
    beta: Root,
    delta: Root,
    elem: &Element<S>,
) -> Result<GenClass, RelGrpError> {
    let psi = block(sys, alpha, beta)?;
    if psi.contains(&delta) {
        return Err(RelGrpError::Configuration("delta lies in the block".into()));
    }
    let d = psi[2];
    let class = match elem.canonical() {
        Element::X { root, f } => {
            if (root == sys.neg(alpha) || root == sys.neg(beta)) && in_mx(&f, 2) {
                GenClass::K2
            } else if (root == alpha || root == beta) && in_mx(&f, 1) {
                GenClass::K3
            } else if (root == d || root == sys.neg(d)) && in_mx(&f, 1) {
                GenClass::K4
            } else if !psi.contains(&root) && in_mx(&f, 1) {
                GenClass::K1
            } else if sys.pairing(alpha, root) > 0 && root != d && in_mx(&f, 0) {
                GenClass::Z
            } else if in_mx(&f, 1) {
                GenClass::XIdeal
            } else {
                GenClass::None
            }
        }
        Element::Z { root, s, xi } => {
            if !psi.contains(&root) && in_mx(&s, 1) && in_poly(&xi, 0) {
                GenClass::K1
            } else {
                GenClass::None
            }
        }
        Element::C { root, s, t } => {
            if root == delta && in_mx(&s, 0) && in_poly(&t, 1) {
                GenClass::K5
            } else {
                GenClass::None
            }
        }
    };
    Ok(class)
}

/// The coset value: `f(0)` summed over the factors `z_{-alpha}(X f, xi)`, plus
/// `-f(0) xi(0)^2` over the factors `z_alpha(X f, xi)`.
///
/// Admissible factors are `z_beta(X f, xi)`, `x_beta(X f)` and `c_delta(f, X xi)` for a
/// single `delta` orthogonal to `alpha`.
pub fn p_functional<S: LocalPair>(
    sys: &RootSystem,
    alpha: Root,
    factors: &[Element<S>],
    proto: &S,
) -> Result<S, RelGrpError> {
    let na = sys.neg(alpha);
    let mut delta: Option<Root> = None;
    let mut acc = proto.zero();
    for e in factors {
        match e.canonical() {
            Element::X { root, f: s } | Element::Z { root, s, .. } => {
                if !in_mx(&s, 1) {
                    return Err(RelGrpError::Alphabet(format!("first argument on root {root} not in XM[X]")));
                }
                if let Element::Z { xi, .. } = e {
                    if !in_poly(xi, 0) {
                        return Err(RelGrpError::Alphabet("second argument not in A[X]".into()));
                    }
                }
                let f0 = s.x_component(1).mul(&s.x_monomial(-1)?);
                if root == na {
                    acc = acc.add(&f0);
                } else if let (true, Element::Z { xi, .. }) = (root == alpha, e) {
                    let x0 = xi.x_component(0);
                    acc = acc.sub(&f0.mul(&x0).mul(&x0));
                }
            }
            Element::C { root, s, t } => {
                if !orth(sys, alpha, root) || *delta.get_or_insert(root) != root {
                    return Err(RelGrpError::Alphabet(format!("commutator factor on root {root}")));
                }
                if !in_mx(&s, 0) || !in_poly(&t, 1) {
                    return Err(RelGrpError::Alphabet("commutator arguments".into()));
                }
            }
        }
    }
    Ok(acc)
}

/// Splits off `x_{-alpha}(mX) x_{-beta}(m'X)` from an admissible factorization.
///
/// Returns `(g0, m, m')` with `g = g0 x_{-alpha}(mX) x_{-beta}(m'X)`; both `p`-values of
/// `g0` are checked to vanish.
#[allow(clippy::type_complexity)]
pub fn kab_split<S: LocalPair>(
    sys: &RootSystem,
    alpha: Root,
    beta: Root,
    factors: &[Element<S>],
    proto: &S,
) -> Result<(Vec<Element<S>>, S, S), RelGrpError> {
    block(sys, alpha, beta)?;
    let m = p_functional(sys, alpha, factors, proto)?;
    let m2 = p_functional(sys, beta, factors, proto)?;
    let x = proto.x_monomial(1)?;
    let mut g0 = factors.to_vec();
    for (root, v) in [(sys.neg(beta), &m2), (sys.neg(alpha), &m)] {
        if !v.is_zero() {
            g0.push(Element::X { root, f: v.neg().mul(&x) });
        }
    }
    let (r1, r2) = (p_functional(sys, alpha, &g0, proto)?, p_functional(sys, beta, &g0, proto)?);
    if !r1.is_zero() || !r2.is_zero() {
        return Err(RelGrpError::Alphabet("residual p-values do not vanish".into()));
    }
    Ok((g0, m, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingCtx, RingElem, Scalar};
    use crate::rootsys::Family;
    use std::sync::Arc;

    struct Fx {
        sys: RootSystem,
        ctx: Arc<RingCtx>,
    }

    impl Fx {
        fn new() -> Self {
            Fx {
                sys: RootSystem::build(Family::D, 4).unwrap(),
                ctx: RingCtx::new(&["a", "b"], &["m", "n"], &[], true).unwrap(),
            }
        }
        fn v(&self, n: &str) -> RingElem {
            RingElem::var(&self.ctx, n).unwrap()
        }
        fn x(&self, e: i16) -> RingElem {
            RingElem::x_pow(&self.ctx, e).unwrap()
        }
        fn r(&self, s: &str) -> Root {
            self.sys.parse_root(s).unwrap()
        }
    }

    #[test]
    fn p_generators() {
        let fx = Fx::new();
        let al = fx.r("[1,-2]");
        let sum = fx.r("[2,-3]");
        let xf = fx.v("m").mul(&fx.x(1));
        let z = Element::Z { root: sum, s: xf.clone(), xi: fx.v("a") };
        assert_eq!(classify_p(&fx.sys, al, &z), GenClass::P1);
        assert_eq!(classify_p(&fx.sys, al, &Element::X { root: al, f: fx.v("m") }), GenClass::P5);
        let nal = fx.sys.neg(al);
        assert_eq!(classify_p(&fx.sys, al, &Element::X { root: nal, f: xf.clone() }), GenClass::None);
        let x2f = xf.mul(&fx.x(1));
        assert_eq!(classify_p(&fx.sys, al, &Element::X { root: nal, f: x2f }), GenClass::P4);
        let perp = fx.r("[3,4]");
        let z3 = Element::Z { root: perp, s: fx.v("n"), xi: fx.v("b") };
        assert_eq!(classify_p(&fx.sys, al, &z3), GenClass::P3);
        let acute = fx.r("[1,-3]");
        let z2 = Element::Z { root: acute, s: fx.v("n"), xi: fx.x(1) };
        assert_eq!(classify_p(&fx.sys, al, &z2), GenClass::P2);
    }

    #[test]
    fn k_generators() {
        let fx = Fx::new();
        let (al, be) = (fx.r("[1,-2]"), fx.r("[1,-3]"));
        let de = default_delta(&fx.sys, al, be).unwrap();
        let xf = fx.v("m").mul(&fx.x(1));
        let outside = fx.r("[1,4]");
        let z = Element::Z { root: outside, s: xf.clone(), xi: fx.v("a") };
        assert_eq!(classify_k(&fx.sys, al, be, de, &z).unwrap(), GenClass::K1);
        let c = Element::C { root: de, s: fx.v("m"), t: fx.x(1) };
        assert_eq!(classify_k(&fx.sys, al, be, de, &c).unwrap(), GenClass::K5);
        let d = fx.sys.sub(al, be).unwrap();
        let x4 = Element::X { root: d, f: xf.clone() };
        assert_eq!(classify_k(&fx.sys, al, be, de, &x4).unwrap(), GenClass::K4);
        assert!(classify_k(&fx.sys, al, be, al, &x4).is_err());
    }

    #[test]
    fn p_values() {
        let fx = Fx::new();
        let al = fx.r("[1,-2]");
        let na = fx.sys.neg(al);
        let (m, n) = (fx.v("m"), fx.v("n"));
        let f = m.add(&n.mul(&fx.x(1))).mul(&fx.x(1));
        let zero = m.zero();
        let g = [Element::Z { root: na, s: f, xi: fx.v("a") }];
        assert_eq!(p_functional(&fx.sys, al, &g, &zero).unwrap(), m);
        let other = [Element::Z { root: fx.r("[1,-3]"), s: m.mul(&fx.x(1)), xi: fx.v("a") }];
        assert!(p_functional(&fx.sys, al, &other, &zero).unwrap().is_zero());
        let de = fx.r("[3,4]");
        let mixed = [
            Element::Z { root: na, s: m.mul(&fx.x(1)), xi: zero.clone() },
            Element::C { root: de, s: n.clone(), t: fx.x(1) },
            Element::Z { root: na, s: n.mul(&fx.x(1)), xi: fx.v("b") },
        ];
        assert_eq!(p_functional(&fx.sys, al, &mixed, &zero).unwrap(), m.add(&n));
        let on_alpha = [Element::Z { root: al, s: m.mul(&fx.x(1)), xi: fx.v("a").add(&fx.x(1)) }];
        let a = fx.v("a");
        assert_eq!(p_functional(&fx.sys, al, &on_alpha, &zero).unwrap(), m.mul(&a).mul(&a).neg());
        let bad = [Element::Z { root: na, s: m.clone(), xi: zero.clone() }];
        assert!(p_functional(&fx.sys, al, &bad, &zero).is_err());
    }

    #[test]
    fn kab_trivial_cases() {
        let fx = Fx::new();
        let (al, be) = (fx.r("[1,-2]"), fx.r("[1,-3]"));
        let m = fx.v("m");
        let zero = m.zero();
        let g = vec![Element::X { root: fx.sys.neg(al), f: m.mul(&fx.x(1)) }];
        let (g0, p, q) = kab_split(&fx.sys, al, be, &g, &zero).unwrap();
        assert_eq!((p, q.is_zero(), g0.len()), (m.clone(), true, 2));
        let h = vec![Element::X { root: al, f: m.mul(&fx.x(1)) }];
        let (g0, p, q) = kab_split(&fx.sys, al, be, &h, &zero).unwrap();
        assert!(p.is_zero() && q.is_zero());
        assert_eq!(g0, h);
    }
}
