//! Word identities for the elements `z` and `c`, and the conjugation formulas
//! showing `P~_alpha(0)` is normal in `P~_alpha(*)`.

use super::{classify_p, ClassifiedFactor, Element, GenClass, RelGrpError};
use crate::constants::ConstantTable;
use crate::ring::LocalPair;
use crate::rootsys::{AngleClass, Root, RootSystem};
use crate::word::{derived, Word};
use serde::{Deserialize, Serialize};

/// A displayed identity `lhs = rhs` between words.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity<S> {
    pub id: String,
    pub lhs: Word<S>,
    pub rhs: Word<S>,
}

fn need(ok: bool, what: &str) -> Result<(), RelGrpError> {
    if ok {
        Ok(())
    } else {
        Err(RelGrpError::Configuration(what.to_string()))
    }
}

fn sum_root(sys: &RootSystem, a: Root, b: Root) -> Result<Root, RelGrpError> {
    match sys.angle_class(a, b) {
        AngleClass::SumIsRoot(s) => Ok(s),
        _ => Err(RelGrpError::Configuration("sum of roots is not a root".into())),
    }
}

fn diff_root(sys: &RootSystem, a: Root, b: Root) -> Result<Root, RelGrpError> {
    match sys.angle_class(a, b) {
        AngleClass::DifferenceIsRoot(d) => Ok(d),
        _ => Err(RelGrpError::Configuration("difference of roots is not a root".into())),
    }
}

fn nn<S: LocalPair>(table: &ConstantTable, a: Root, b: Root, p: &S) -> S {
    p.int(table.get(a, b) as i64)
}

/// Relations satisfied by `z_alpha(s, xi)`, parts 1 to 5.
#[allow(clippy::too_many_arguments)]
pub fn zrels_decompose<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    part: u8,
    alpha: Root,
    beta: Root,
    s: &S,
    xi: &S,
    eta: &S,
) -> Result<Identity<S>, RelGrpError> {
    let x = |r: Root, v: S| Word::gen(r, v);
    let z = |r: Root, a: &S, b: &S| derived::z(sys, r, a, b);
    let na = sys.neg(alpha);
    let (lhs, rhs) = match part {
        1 => (Word::conj(&z(alpha, s, xi), &x(na, eta.clone())), z(alpha, s, &xi.add(eta))),
        2 => {
            let ab = sum_root(sys, alpha, beta)?;
            let rhs = Word::product([
                &x(alpha, s.mul(xi).mul(eta).neg()),
                &x(ab, nn(table, beta, alpha, s).mul(s).mul(eta)),
                &z(beta, s, xi),
            ]);
            (Word::conj(&z(beta, s, xi), &x(alpha, eta.clone())), rhs)
        }
        3 => {
            let d = diff_root(sys, alpha, beta)?;
            let rhs = Word::product([
                &x(alpha, s.mul(xi).mul(eta)),
                &x(d, nn(table, beta, na, s).mul(s).mul(xi).mul(xi).mul(eta)),
                &z(beta, s, xi),
            ]);
            (Word::conj(&z(beta, s, xi), &x(alpha, eta.clone())), rhs)
        }
        4 => {
            need(sys.pairing(alpha, beta) == 0 && alpha != beta, "roots must be orthogonal")?;
            (Word::conj(&z(beta, s, xi), &x(alpha, eta.clone())), z(beta, s, xi))
        }
        5 => {
            let ab = sum_root(sys, alpha, beta)?;
            let e = nn(table, alpha, beta, s);
            let (nb, nab) = (sys.neg(beta), sys.neg(ab));
            let rhs = Word::product([
                &x(alpha, e.mul(s)),
                &x(nb, s.mul(xi).neg()),
                &x(beta, s.mul(xi).mul(eta).mul(eta)),
                &x(ab, s.mul(eta)),
                &z(alpha, &e.mul(s).neg(), &e.mul(xi).mul(eta).neg()),
                &x(na, e.mul(s).mul(xi).mul(xi).mul(eta).mul(eta).neg()),
                &x(nab, s.mul(xi).mul(xi).mul(eta).neg()),
                &z(nb, &s.mul(xi), &eta.neg()),
            ]);
            (z(ab, &s.mul(eta), xi), rhs)
        }
        _ => return Err(RelGrpError::Configuration(format!("no part {part}"))),
    };
    Ok(Identity { id: format!("L4.2.{part}"), lhs, rhs })
}

/// Relations satisfied by `c_alpha(s, t)`, parts 1 to 4.
#[allow(clippy::too_many_arguments)]
pub fn crels_decompose<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    part: u8,
    alpha: Root,
    beta: Root,
    s: &S,
    t: &S,
    xi: &S,
) -> Result<Identity<S>, RelGrpError> {
    let x = |r: Root, v: S| Word::gen(r, v);
    let c = |r: Root, a: &S, b: &S| derived::c(sys, r, a, b);
    let na = sys.neg(alpha);
    let (lhs, rhs) = match part {
        1 => {
            let ab = sum_root(sys, alpha, beta)?;
            let rhs = Word::product([
                &x(alpha, s.mul(t).mul(xi).neg()),
                &x(ab, nn(table, alpha, beta, s).mul(s).mul(s).mul(t).mul(xi)),
            ]);
            (Word::comm(&c(beta, s, t), &x(alpha, xi.clone())), rhs)
        }
        2 => {
            let d = diff_root(sys, alpha, beta)?;
            let stx = s.mul(t).mul(xi);
            let rhs = Word::product([
                &x(alpha, stx.add(&stx.mul(s).mul(t))),
                &x(d, nn(table, na, beta, s).mul(s).mul(t).mul(t).mul(xi)),
            ]);
            (Word::comm(&c(beta, s, t), &x(alpha, xi.clone())), rhs)
        }
        3 => {
            need(sys.pairing(alpha, beta) == 0 && alpha != beta, "roots must be orthogonal")?;
            (Word::comm(&c(beta, s, t), &x(alpha, xi.clone())), Word::empty())
        }
        4 => {
            let ab = sum_root(sys, alpha, beta)?;
            let e = nn(table, alpha, beta, s);
            let nb = sys.neg(beta);
            let inner = Word::comm(&x(beta, s.mul(t)), &x(nb, xi.clone()));
            let by = x(ab, s.neg()).mul(&x(na, e.mul(t)));
            let rhs = Word::product([
                &Word::conj(&inner, &by),
                &c(alpha, &e.mul(s).mul(xi), &e.mul(t).neg()).inv(),
                &x(nb, s.mul(t).mul(xi).mul(xi).neg()),
            ]);
            (c(ab, s, &t.mul(xi)), rhs)
        }
        _ => return Err(RelGrpError::Configuration(format!("no part {part}"))),
    };
    Ok(Identity { id: format!("L4.5.{part}"), lhs, rhs })
}

/// The four conjugation formulas by `x_{-alpha}(mX)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P0Case {
    /// `z_beta(Xf, xi)` with `alpha - beta` a root.
    #[serde(rename = "eq3-1")]
    Eq31,
    /// `z_beta(f, X xi)` with `alpha - beta` a root.
    #[serde(rename = "eq3-2")]
    Eq32,
    /// `z_beta(Xf, xi)` with `alpha + beta` a root.
    #[serde(rename = "eq3-3")]
    Eq33,
    /// `x_alpha(f)`, using `beta` with `alpha + beta` a root.
    #[serde(rename = "eq:zalpha")]
    ZAlpha,
}

impl P0Case {
    pub fn id(self) -> &'static str {
        match self {
            P0Case::Eq31 => "eq3-1",
            P0Case::Eq32 => "eq3-2",
            P0Case::Eq33 => "eq3-3",
            P0Case::ZAlpha => "eq:zalpha",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [P0Case::Eq31, P0Case::Eq32, P0Case::Eq33, P0Case::ZAlpha].into_iter().find(|c| c.id() == s)
    }
}

/// `g^{x_{-alpha}(mX)}` for a generator `g`, rewritten as a classified product.
#[allow(clippy::too_many_arguments)]
pub fn conj_p0_decompose<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    case: P0Case,
    alpha: Root,
    beta: Root,
    m: &S,
    f: &S,
    xi: &S,
) -> Result<(Word<S>, Vec<ClassifiedFactor<S>>), RelGrpError> {
    let na = sys.neg(alpha);
    let xx = m.x_monomial(1)?;
    let x2 = m.x_monomial(2)?;
    let mx = m.mul(&xx);
    let conj_by = Word::gen(na, mx.clone());
    let ex = |root: Root, f: S| Element::X { root, f };
    let ez = |root: Root, s: S, xi: S| Element::Z { root, s, xi };
    let (g, elems): (Element<S>, Vec<Element<S>>) = match case {
        P0Case::Eq31 | P0Case::Eq32 => {
            let ba = sum_root(sys, beta, na)?;
            let n = nn(table, beta, na, m);
            let (s, z2) = if case == P0Case::Eq31 { (xx.mul(f), xi.clone()) } else { (f.clone(), xx.mul(xi)) };
            let g = ez(beta, s.clone(), z2.clone());
            let second = if case == P0Case::Eq31 { n.mul(m).mul(&x2).mul(f) } else { n.mul(m).mul(&xx).mul(f) };
            (g.clone(), vec![ex(na, m.mul(&x2).mul(f).mul(xi).neg()), ex(ba, second), g])
        }
        P0Case::Eq33 => {
            let nab = sum_root(sys, na, sys.neg(beta))?;
            let g = ez(beta, xx.mul(f), xi.clone());
            let n = nn(table, beta, alpha, m);
            let first = ex(na, m.mul(&x2).mul(f).mul(xi));
            (g.clone(), vec![first, ex(nab, n.mul(m).mul(&x2).mul(f).mul(xi).mul(xi)), g])
        }
        P0Case::ZAlpha => {
            let ab = sum_root(sys, alpha, beta)?;
            let e = nn(table, alpha, beta, m);
            let (nb, nab) = (sys.neg(beta), sys.neg(ab));
            let xf = xx.mul(f);
            let mf = m.mul(f);
            let elems = vec![
                ex(ab, e.mul(&xf)),
                ex(beta, m.mul(&x2).mul(f).neg()),
                ex(nb, mf.clone()),
                ex(alpha, f.clone()),
                ez(ab, e.mul(&xf).neg(), e.mul(m).neg()),
                ez(nb, mf.neg(), xx.neg()),
                ex(nab, e.mul(m).mul(m).mul(&xf).neg()),
                ex(na, m.mul(m).mul(&x2).mul(f).neg()),
            ];
            (ex(alpha, f.clone()), elems)
        }
    };
    let lhs = Word::conj(&g.word(sys), &conj_by);
    let factors =
        elems.into_iter().map(|elem| ClassifiedFactor { class: classify_p(sys, alpha, &elem), elem }).collect();
    Ok((lhs, factors))
}

/// `z_alpha(f0, xi0 + X xi1) = [x_{-alpha}(-X xi1), z_alpha(f0, xi0)] * z_alpha(f0, xi0)`.
pub fn kdecomp1_factor<S: LocalPair>(
    sys: &RootSystem,
    alpha: Root,
    f0: &S,
    xi0: &S,
    xi1: &S,
) -> Result<Identity<S>, RelGrpError> {
    let xx = f0.x_monomial(1)?;
    let xi = xi0.add(&xx.mul(xi1));
    let zc = derived::z(sys, alpha, f0, xi0);
    let rhs = Word::comm(&Word::gen(sys.neg(alpha), xx.mul(xi1).neg()), &zc).mul(&zc);
    Ok(Identity { id: "L4.8".into(), lhs: derived::z(sys, alpha, f0, &xi), rhs })
}

/// Expected generator types of the conjugation formulas, in factor order.
pub fn expected_classes(case: P0Case) -> &'static [GenClass] {
    use GenClass::*;
    match case {
        P0Case::Eq31 => &[P4, P1, P1],
        P0Case::Eq32 => &[P4, P1, P2],
        P0Case::Eq33 => &[P4, P1, P1],
        P0Case::ZAlpha => &[P1, P1, P2, P5, P1, P2, P1, P4],
    }
}
