//! Symbolic ring elements: Laurent polynomials over `Z` divided by a formal
//! product of unit-shaped denominators.

use super::poly::{Mono, Poly};
use super::{LocalPair, RingError, Scalar};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    /// Element of the local ring `A`.
    A,
    /// Generator of the ideal `M`.
    M,
    /// Invertible element of `A`.
    Unit,
    /// The Laurent variable `X`.
    X,
}

/// Variables of a symbolic ring, in slot order `a_vars, m_vars, unit_vars, X`.
#[derive(Debug, PartialEq, Eq)]
pub struct RingCtx {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    declared: Vec<Poly<i128>>,
}

pub type Denoms = Vec<(Poly<i128>, u32)>;

#[derive(Clone)]
pub struct RingElem {
    ctx: Arc<RingCtx>,
    num: Poly<i128>,
    den: Denoms,
}

impl RingCtx {
    pub fn new(a_vars: &[&str], m_vars: &[&str], unit_vars: &[&str], laurent: bool) -> Result<Arc<Self>, RingError> {
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        for (vars, kind) in [(a_vars, VarKind::A), (m_vars, VarKind::M), (unit_vars, VarKind::Unit)] {
            for v in vars {
                if *v == "X" || names.iter().any(|n| n == v) {
                    return Err(RingError::BadSpec(format!("duplicate or reserved variable `{v}`")));
                }
                if !v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(RingError::BadSpec(format!("bad variable name `{v}`")));
                }
                names.push(v.to_string());
                kinds.push(kind);
            }
        }
        if laurent {
            names.push("X".into());
            kinds.push(VarKind::X);
        }
        Ok(Arc::new(RingCtx { names, kinds, declared: Vec::new() }))
    }

    /// Same variables plus declared denominators; each must pass the unit shape test.
    pub fn with_denominators(self: &Arc<Self>, dens: Vec<RingElem>) -> Result<Arc<Self>, RingError> {
        let mut ctx = RingCtx { names: self.names.clone(), kinds: self.kinds.clone(), declared: Vec::new() };
        for d in dens {
            if !d.den.is_empty() || !self.denominator_shape(&d.num) {
                return Err(RingError::BadSpec(format!("denominator {d} is not of unit shape")));
            }
            ctx.declared.push(d.num);
        }
        Ok(Arc::new(ctx))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn x_index(&self) -> Option<usize> {
        self.kinds.iter().position(|k| *k == VarKind::X)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn declared(&self) -> &[Poly<i128>] {
        &self.declared
    }

    fn laurent_mask(&self) -> Vec<bool> {
        self.kinds.iter().map(|k| matches!(k, VarKind::Unit | VarKind::X)).collect()
    }

    /// X-free with constant term `+-1`: a unit in the localized generic ring.
    fn denominator_shape(&self, p: &Poly<i128>) -> bool {
        let x_free = self.x_index().is_none_or(|x| p.terms().iter().all(|(m, _)| m[x] == 0));
        x_free && !p.is_monomial() && matches!(p.constant_term(), Some(1) | Some(-1))
    }
}

impl RingElem {
    pub fn from_poly(ctx: &Arc<RingCtx>, num: Poly<i128>) -> Self {
        RingElem { ctx: ctx.clone(), num, den: Vec::new() }
    }

    pub fn int(ctx: &Arc<RingCtx>, v: i64) -> Self {
        Self::from_poly(ctx, Poly::constant(ctx.nvars(), v as i128))
    }

    pub fn var(ctx: &Arc<RingCtx>, name: &str) -> Result<Self, RingError> {
        let i = ctx.index_of(name).ok_or_else(|| RingError::UnknownVariable(name.into()))?;
        Ok(Self::from_poly(ctx, Poly::var(ctx.nvars(), i, 1, 1)))
    }

    /// `X^e`.
    pub fn x_pow(ctx: &Arc<RingCtx>, e: i16) -> Result<Self, RingError> {
        let i = ctx.x_index().ok_or_else(|| RingError::UnknownVariable("X".into()))?;
        Ok(Self::from_poly(ctx, Poly::var(ctx.nvars(), i, e, 1)))
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn numerator(&self) -> &Poly<i128> {
        &self.num
    }

    pub fn denominators(&self) -> &Denoms {
        &self.den
    }

    fn same_ctx(&self, o: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx.names == o.ctx.names && self.ctx.kinds == o.ctx.kinds {
            Ok(())
        } else {
            Err(RingError::MixedSpecs)
        }
    }

    fn one_poly(&self) -> Poly<i128> {
        Poly::constant(self.ctx.nvars(), 1)
    }

    fn expand_den(&self, den: &Denoms) -> Poly<i128> {
        den.iter().fold(self.one_poly(), |acc, (f, e)| acc.mul(&f.pow(*e, 1)))
    }

    /// Numerators over a common denominator.
    fn align(&self, o: &Self) -> (Poly<i128>, Poly<i128>, Denoms) {
        let mut common: Denoms = self.den.clone();
        for (f, e) in &o.den {
            match common.iter_mut().find(|(g, _)| g == f) {
                Some((_, ce)) => *ce = (*ce).max(*e),
                None => common.push((f.clone(), *e)),
            }
        }
        common.sort_by(|a, b| a.0.cmp(&b.0));
        let lift = |x: &RingElem| {
            let missing: Denoms = common
                .iter()
                .map(|(f, e)| {
                    let have = x.den.iter().find(|(g, _)| g == f).map_or(0, |(_, h)| *h);
                    (f.clone(), e - have)
                })
                .collect();
            x.num.mul(&x.expand_den(&missing))
        };
        (lift(self), lift(o), common)
    }

    fn normalized(ctx: Arc<RingCtx>, mut num: Poly<i128>, den: Denoms) -> Self {
        let mask = ctx.laurent_mask();
        let mut out: Denoms = Vec::new();
        for (mut f, mut e) in den {
            if e == 0 {
                continue;
            }
            if f.constant_term() == Some(&-1) {
                f = f.neg();
                if e % 2 == 1 {
                    num = num.neg();
                }
            }
            while e > 0 && !num.is_zero() {
                match num.exact_div(&f, &mask) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if num.is_zero() {
                e = 0;
            }
            if e > 0 {
                match out.iter_mut().find(|(g, _)| *g == f) {
                    Some((_, oe)) => *oe += e,
                    None => out.push((f, e)),
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        RingElem { ctx, num, den: out }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        self.same_ctx(o)?;
        let (a, b, den) = self.align(o);
        Ok(Self::normalized(self.ctx.clone(), a.add(&b), den))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.same_ctx(o)?;
        let mut den = self.den.clone();
        den.extend(o.den.iter().cloned());
        Ok(Self::normalized(self.ctx.clone(), self.num.mul(&o.num), den))
    }

    pub fn try_eq(&self, o: &Self) -> Result<bool, RingError> {
        self.same_ctx(o)?;
        let (a, b, _) = self.align(o);
        Ok(a == b)
    }

    /// Inverse for elements of the shape `+-(unit monomial) * (unit-shaped polynomial)`
    /// times existing denominators.
    pub fn invert(&self) -> Result<Self, RingError> {
        let n = self.ctx.nvars();
        let fail = || RingError::NotAUnit(self.to_string());
        if self.num.is_zero() {
            return Err(fail());
        }
        let mask = self.ctx.laurent_mask();
        let mut content = Mono::from_elem(0, n);
        for (i, c) in content.iter_mut().enumerate() {
            if mask[i] {
                *c = self.num.min_exp(i).unwrap_or(0);
            }
        }
        let neg: Mono = content.iter().map(|e| -e).collect();
        let rest = self.num.scale_mono(&neg, &1);
        let back = Poly::monomial(n, neg, 1i128);
        let top = back.mul(&self.expand_den(&self.den));
        if rest.is_monomial() {
            let (m, c) = &rest.terms()[0];
            if m.iter().all(|&e| e == 0) && (*c == 1 || *c == -1) {
                return Ok(Self::normalized(self.ctx.clone(), top.scale_mono(&Mono::from_elem(0, n), c), vec![]));
            }
            return Err(fail());
        }
        if self.ctx.denominator_shape(&rest) {
            return Ok(Self::normalized(self.ctx.clone(), top, vec![(rest, 1)]));
        }
        Err(fail())
    }

    /// Numerator with the denominator cleared (unit factor, so ideal tests are unaffected).
    pub fn cleared(&self) -> &Poly<i128> {
        &self.num
    }

    /// Display with explicit variable names; parsable by the ring expression grammar.
    fn fmt_poly(&self, p: &Poly<i128>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ctx.names[v], e)),
                }
            }
            let mag = c.unsigned_abs();
            let body = match (mag, factors.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => factors.join("*"),
                (_, false) => format!("{}*{}", mag, factors.join("*")),
            };
            if i == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl Scalar for RingElem {
    fn zero(&self) -> Self {
        Self::int(&self.ctx, 0)
    }
    fn int(&self, v: i64) -> Self {
        Self::int(&self.ctx, v)
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("mixed ring specs")
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("mixed ring specs")
    }
    fn neg(&self) -> Self {
        RingElem { ctx: self.ctx.clone(), num: self.num.neg(), den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Result<Self, RingError> {
        self.invert()
    }
}

impl LocalPair for RingElem {
    fn in_m(&self) -> bool {
        let ms: Vec<usize> = (0..self.ctx.nvars()).filter(|&i| self.ctx.kinds[i] == VarKind::M).collect();
        self.num.terms().iter().all(|(m, _)| ms.iter().any(|&i| m[i] > 0))
    }

    fn x_range(&self) -> Option<(i32, i32)> {
        if self.num.is_zero() {
            return None;
        }
        match self.ctx.x_index() {
            None => Some((0, 0)),
            Some(x) => Some((self.num.min_exp(x)? as i32, self.num.max_exp(x)? as i32)),
        }
    }

    fn x_component(&self, e: i32) -> Self {
        let num = match self.ctx.x_index() {
            None if e == 0 => self.num.clone(),
            None => Poly::zero(self.ctx.nvars()),
            Some(x) => self.num.filter_terms(|m| m[x] as i32 == e),
        };
        Self::normalized(self.ctx.clone(), num, self.den.clone())
    }

    fn x_monomial(&self, e: i32) -> Result<Self, RingError> {
        Self::x_pow(&self.ctx, e as i16)
    }
}

impl PartialEq for RingElem {
    fn eq(&self, o: &Self) -> bool {
        self.try_eq(o).unwrap_or(false)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.fmt_poly(&self.num);
        if self.den.is_empty() {
            return write!(f, "{top}");
        }
        write!(f, "({top})")?;
        for (d, e) in &self.den {
            for _ in 0..*e {
                write!(f, "/({})", self.fmt_poly(d))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                $body(self, rhs)
            }
        }
        impl std::ops::$tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                $body(&self, &rhs)
            }
        }
        impl std::ops::$tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                $body(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a: &RingElem, b: &RingElem| Scalar::add(a, b));
binop!(Sub, sub, |a: &RingElem, b: &RingElem| Scalar::sub(a, b));
binop!(Mul, mul, |a: &RingElem, b: &RingElem| Scalar::mul(a, b));

impl std::ops::Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::IdealSpec;

    fn ctx() -> Arc<RingCtx> {
        RingCtx::new(&["a", "b"], &["m"], &["t"], true).unwrap()
    }

    fn v(c: &Arc<RingCtx>, n: &str) -> RingElem {
        RingElem::var(c, n).unwrap()
    }

    #[test]
    fn unit_times_inverse_is_one() {
        let c = ctx();
        let u = RingElem::int(&c, 1) + v(&c, "a") * v(&c, "m");
        let prod = &u * &u.invert().unwrap();
        assert!(prod.is_one());
        assert!(prod.denominators().is_empty());
    }

    #[test]
    fn difference_of_squares_in_x() {
        let c = ctx();
        let x = RingElem::x_pow(&c, 1).unwrap();
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let lhs = (&a + &(&b * &x)) * (&a - &(&b * &x));
        let rhs = &a * &a - &b * &b * &x * &x;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_forms_agree() {
        let c = ctx();
        let (a, m) = (v(&c, "a"), v(&c, "m"));
        let u = RingElem::int(&c, 1) + &a * &m;
        let q1 = &m * &u.invert().unwrap();
        let q2 = m.div(&u).unwrap();
        assert_eq!(q1, q2);
        assert_eq!(&q1 * &u, m);
    }

    #[test]
    fn unit_recognition() {
        let c = ctx();
        let x = RingElem::x_pow(&c, 1).unwrap();
        assert_eq!(x.invert().unwrap(), RingElem::x_pow(&c, -1).unwrap());
        assert!(v(&c, "a").invert().is_err());
        let t = v(&c, "t");
        assert!((&t * &x).neg().invert().is_ok());
        let one_plus_ax = RingElem::int(&c, 1) + v(&c, "a") * x;
        assert!(one_plus_ax.invert().is_err());
    }

    #[test]
    fn ideal_examples() {
        let c = ctx();
        let x = RingElem::x_pow(&c, 1).unwrap();
        let xi = RingElem::x_pow(&c, -1).unwrap();
        let (a, m) = (v(&c, "a"), v(&c, "m"));
        assert!((&m * &x).in_ideal(IdealSpec::XMPoly));
        assert!(!(&a * &x).in_ideal(IdealSpec::MPoly));
        assert!((&m * &xi).in_ideal(IdealSpec::MLaurent));
        assert!(!(&m * &xi).in_ideal(IdealSpec::MPoly));
    }

    #[test]
    fn b_grading() {
        let c = ctx();
        let x = RingElem::x_pow(&c, 1).unwrap();
        let xi = RingElem::x_pow(&c, -1).unwrap();
        let (a, m) = (v(&c, "a"), v(&c, "m"));
        assert!((&a * &xi).in_b());
        assert!(!(&a * &x).in_b());
        assert!((&m * &x).in_b());
        let mx2 = &m * &x * x.clone();
        assert_eq!(mx2.graded_component(-2), mx2);
        assert_eq!(mx2.degree().unwrap(), -2);
    }

    #[test]
    fn display_shape() {
        let c = ctx();
        let e = RingElem::int(&c, 2) * v(&c, "a") - v(&c, "m");
        assert_eq!(e.to_string(), "2*a - m");
    }
}
