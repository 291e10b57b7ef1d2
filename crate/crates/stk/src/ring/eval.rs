//! Ring homomorphisms from the symbolic ring into finite local rings.

use super::elem::{RingCtx, RingElem, VarKind};
use super::finite::{FElem, FiniteRing, XPoly};
use super::poly::Mono;
use super::RingError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Whether `X` is substituted or kept as a formal Laurent variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Full,
    KeepX,
}

/// A sampled point: `A`-variables arbitrary, `M`-variables in the maximal ideal,
/// unit variables and `X` units.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub target: FiniteRing,
    pub values: Vec<FElem>,
    pub ctx: Arc<RingCtx>,
}

impl Assignment {
    pub fn sample(ctx: &Arc<RingCtx>, target: FiniteRing, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = ctx
            .kinds()
            .iter()
            .map(|k| match k {
                VarKind::A => target.random(&mut rng),
                VarKind::M => target.random_maximal(&mut rng),
                VarKind::Unit | VarKind::X => target.random_unit(&mut rng),
            })
            .collect();
        Assignment { target, values, ctx: ctx.clone() }
    }

    /// Explicit values by variable name; unnamed variables default to zero (or one for units).
    pub fn with_values(ctx: &Arc<RingCtx>, target: FiniteRing, named: &[(&str, i64)]) -> Result<Self, RingError> {
        let mut values: Vec<FElem> = ctx
            .kinds()
            .iter()
            .map(|k| target.from_int(if matches!(k, VarKind::Unit | VarKind::X) { 1 } else { 0 }))
            .collect();
        for (n, v) in named {
            let i = ctx.index_of(n).ok_or_else(|| RingError::UnknownVariable(n.to_string()))?;
            values[i] = target.from_int(*v);
        }
        Ok(Assignment { target, values, ctx: ctx.clone() })
    }

    fn mono_value(&self, m: &Mono, skip: Option<usize>) -> Result<FElem, RingError> {
        let mut acc = self.target.from_int(1);
        for (i, &e) in m.iter().enumerate() {
            if Some(i) == skip || e == 0 {
                continue;
            }
            let base = if e < 0 { self.values[i].inv()? } else { self.values[i] };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&base);
            }
        }
        Ok(acc)
    }

    fn coeff(&self, c: i128) -> FElem {
        let q = self.target.order() as i128;
        self.target.from_int(c.rem_euclid(q.max(1)) as i64)
    }

    fn denominator_value(&self, x: &RingElem) -> Result<FElem, RingError> {
        let mut acc = self.target.from_int(1);
        for (f, e) in x.denominators() {
            let mut v = self.target.from_int(0);
            for (m, c) in f.terms() {
                v = v.add(&self.coeff(*c).mul(&self.mono_value(m, None)?));
            }
            for _ in 0..*e {
                acc = acc.mul(&v);
            }
        }
        acc.inv()
    }

    /// Fully substituted value. Fails if a denominator lands outside the units.
    pub fn eval(&self, x: &RingElem) -> Result<FElem, RingError> {
        let mut acc = self.target.from_int(0);
        for (m, c) in x.numerator().terms() {
            acc = acc.add(&self.coeff(*c).mul(&self.mono_value(m, None)?));
        }
        Ok(acc.mul(&self.denominator_value(x)?))
    }

    /// Value in `target[X, X^-1]`, keeping `X` formal.
    pub fn eval_keep_x(&self, x: &RingElem) -> Result<XPoly, RingError> {
        let xi = self.ctx.x_index();
        let zero = self.target.from_int(0);
        let mut acc = XPoly::from_coeffs(zero, 0, vec![]);
        for (m, c) in x.numerator().terms() {
            let coeff = self.coeff(*c).mul(&self.mono_value(m, xi)?);
            let e = xi.map_or(0, |i| m[i] as i32);
            acc = acc.add(&XPoly::monomial(coeff, e));
        }
        Ok(acc.mul(&XPoly::constant(self.denominator_value(x)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Scalar;

    #[test]
    fn z9_denominator_example() {
        let ctx = RingCtx::new(&["a"], &["m"], &[], true).unwrap();
        let r = FiniteRing::parse("Z9").unwrap();
        let asg = Assignment::with_values(&ctx, r, &[("a", 2), ("m", 3)]).unwrap();
        let a = RingElem::var(&ctx, "a").unwrap();
        let m = RingElem::var(&ctx, "m").unwrap();
        let u = RingElem::int(&ctx, 1) + &a * &m;
        assert_eq!(asg.eval(&u).unwrap(), r.from_int(7));
        assert_eq!(asg.eval(&u.inv().unwrap()).unwrap(), r.from_int(4));
    }

    #[test]
    fn dual_number_m_cubed_vanishes() {
        let ctx = RingCtx::new(&[], &["m"], &[], false).unwrap();
        let r = FiniteRing::parse("F2e3").unwrap();
        let mut asg = Assignment::with_values(&ctx, r, &[]).unwrap();
        asg.values[0] = r.elem(&[0, 1]);
        let m = RingElem::var(&ctx, "m").unwrap();
        assert!(asg.eval(&(&m * &m * m.clone())).unwrap().is_zero());
    }

    #[test]
    fn keep_x_tracks_exponents() {
        let ctx = RingCtx::new(&["a"], &["m"], &[], true).unwrap();
        let r = FiniteRing::parse("Z9").unwrap();
        let asg = Assignment::with_values(&ctx, r, &[("a", 2), ("m", 3)]).unwrap();
        let x = RingElem::x_pow(&ctx, -1).unwrap();
        let e = &RingElem::var(&ctx, "a").unwrap() * &x;
        let v = asg.eval_keep_x(&e).unwrap();
        assert_eq!(v.coeff(-1), r.from_int(2));
    }
}
