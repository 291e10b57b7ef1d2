//! The map `S_alpha(a, -)` and the displayed computations around it.

use super::{Torsor, TorsorError, Triple};
use crate::ring::LocalPair;
use crate::rootsys::{AngleClass, Root};
use crate::word::{derived, RelationInstance, RelationKind, Word};

/// Relation kinds whose action on classes is checked directly.
pub fn in_torsor_scope(kind: RelationKind) -> bool {
    use RelationKind::*;
    match kind {
        R1 { d } => d <= 1,
        R3Angle { d, e: 1 } => d <= 1,
        R3Perp { d, e: 1 } | R2 { d, e: 1 } => d <= 0,
        _ => false,
    }
}

impl<S: LocalPair> Torsor<S> {
    fn root_sum(&self, a: Root, b: Root) -> Result<Root, TorsorError> {
        match self.sys.angle_class(a, b) {
            AngleClass::SumIsRoot(s) => Ok(s),
            _ => Err(TorsorError::Alphabet("roots do not sum to a root".into())),
        }
    }

    fn n(&self, a: Root, b: Root) -> S {
        self.proto.int(self.table.get(a, b) as i64)
    }

    /// `S_alpha(a, g) = x_alpha(a X^-1) g x_alpha(-a X^-1 / (1 + am)) {X, 1 + am}` for `g` in `P_alpha(m)`.
    pub fn s_map(&self, alpha: Root, a: &S, g: &Word<S>, m: &S) -> Result<Word<S>, TorsorError> {
        let v = a.mul(m).add(&a.one());
        let at = a.mul(&self.proto.x_monomial(-1)?);
        Ok(Word::product([
            &Word::gen(alpha, at.clone()),
            g,
            &Word::gen(alpha, at.div(&v)?.neg()),
            &derived::sym(&self.sys, alpha, &self.proto.x_monomial(1)?, &v)?,
        ]))
    }

    /// The closed form of `S_alpha(a, x_{-alpha}(mX))`.
    pub fn s_map_root_element(&self, alpha: Root, a: &S, m: &S) -> Result<(Word<S>, Word<S>), TorsorError> {
        let v = a.mul(m).add(&a.one());
        let na = self.sys.neg(alpha);
        let mx = m.mul(&self.proto.x_monomial(1)?);
        let lhs = self.s_map(alpha, a, &Word::gen(na, mx.clone()), m)?;
        let rhs = Word::product([
            &Word::gen(na, mx.div(&v)?),
            &derived::ds(&self.sys, alpha, a, m)?,
            &derived::h(&self.sys, alpha, &v)?,
        ]);
        Ok((lhs, rhs))
    }

    /// Successive forms of `x_alpha(a X^-1) x_{-alpha}(mX)`, each equal to the next.
    pub fn root_element_chain(&self, alpha: Root, a: &S, m: &S) -> Result<Vec<Word<S>>, TorsorError> {
        let sys = &self.sys;
        let gamma =
            (0..sys.len()).find(|&g| sys.pairing(alpha, g) == -1).ok_or(crate::rootsys::RootError::NoCompanion)?;
        let (x1, xm1) = (self.proto.x_monomial(1)?, self.proto.x_monomial(-1)?);
        let v = a.mul(m).add(&a.one());
        let na = sys.neg(alpha);
        let g = |r: Root, s: S| Word::gen(r, s);
        let hg = derived::h(sys, gamma, &x1)?;
        let ds = derived::ds(sys, alpha, a, m)?;
        let hv = derived::h(sys, alpha, &v)?;
        let head = g(na, m.mul(&x1).div(&v)?);
        let tail = g(alpha, a.mul(&xm1).div(&v)?);
        Ok(vec![
            g(alpha, a.mul(&xm1)).mul(&g(na, m.mul(&x1))),
            Word::lconj(&hg, &g(alpha, a.clone()).mul(&g(na, m.clone()))),
            Word::lconj(&hg, &Word::product([&g(na, m.div(&v)?), &ds, &hv, &g(alpha, a.div(&v)?)])),
            Word::product([
                &head,
                &ds,
                &derived::h(sys, alpha, &xm1.mul(&v))?,
                &derived::h(sys, alpha, &xm1)?.inv(),
                &tail,
            ]),
            Word::product([&head, &ds, &derived::sym(sys, alpha, &xm1, &v)?, &hv, &tail]),
            Word::product([&head, &ds, &hv, &tail, &derived::sym(sys, alpha, &v, &x1)?]),
        ])
    }

    /// `S_alpha(a, g1 g2)` and `S_alpha(a, g1) S_alpha(a / (1 + a m1), g2)`.
    #[allow(clippy::too_many_arguments)]
    pub fn s_map_product(
        &self,
        alpha: Root,
        a: &S,
        g1: &Word<S>,
        m1: &S,
        g2: &Word<S>,
        m2: &S,
    ) -> Result<(Word<S>, Word<S>), TorsorError> {
        let lhs = self.s_map(alpha, a, &g1.mul(g2), &m1.add(m2))?;
        let a2 = a.div(&a.mul(m1).add(&a.one()))?;
        let rhs = self.s_map(alpha, a, g1, m1)?.mul(&self.s_map(alpha, &a2, g2, m2)?);
        Ok((lhs, rhs))
    }

    /// `S_alpha(a, g) h_alpha(1 + am)^-1`, expected in `P_alpha(m / (1 + am))`.
    pub fn additive_element(&self, alpha: Root, a: &S, g: &Word<S>, m: &S) -> Result<(Word<S>, S), TorsorError> {
        let v = a.mul(m).add(&a.one());
        let w = self.s_map(alpha, a, g, m)?.mul(&derived::h(&self.sys, alpha, &v)?.inv());
        Ok((w, m.div(&v)?))
    }

    /// For `alpha - beta` a root: the element expected in `P_beta(m' / (1 + am))`.
    #[allow(clippy::too_many_arguments)]
    pub fn sharp_element(
        &self,
        alpha: Root,
        beta: Root,
        a: &S,
        g: &Word<S>,
        m: &S,
        m2: &S,
    ) -> Result<(Word<S>, S), TorsorError> {
        let amb = self.root_sum(alpha, self.sys.neg(beta))?;
        let (w, _) = self.additive_element(alpha, a, g, m)?;
        let coef = self.n(alpha, self.sys.neg(beta)).mul(a).mul(m2).neg();
        let v = a.mul(m).add(&a.one());
        Ok((w.mul(&Word::gen(amb, coef)), m2.div(&v)?))
    }

    /// For `alpha - beta` a root: the element expected in `P_alpha((m - e b m') / (1 + am))`.
    #[allow(clippy::too_many_arguments)]
    pub fn obtuse_element(
        &self,
        alpha: Root,
        beta: Root,
        a: &S,
        b: &S,
        g: &Word<S>,
        m: &S,
        m2: &S,
    ) -> Result<(Word<S>, S), TorsorError> {
        let bma = self.root_sum(beta, self.sys.neg(alpha))?;
        let eps = self.n(alpha, self.sys.neg(beta));
        let c = eps.mul(a).mul(b).mul(m2).add(&a.one());
        let (w, _) = self.additive_element(alpha, a, g, m)?;
        let out = Word::product([
            &Word::gen(bma, b.clone()),
            &w,
            &derived::h(&self.sys, bma, &c.inv()?)?,
            &Word::gen(bma, b.mul(&c).neg()),
        ]);
        let v = a.mul(m).add(&a.one());
        Ok((out, m.sub(&eps.mul(b).mul(m2)).div(&v)?))
    }

    /// Successive forms in the computation behind [`Torsor::obtuse_element`] for
    /// `g = x_{-beta}(m'X) x_{-alpha}(mX)`.
    #[allow(clippy::too_many_arguments)]
    pub fn obtuse_chain(
        &self,
        alpha: Root,
        beta: Root,
        a: &S,
        b: &S,
        m: &S,
        m2: &S,
    ) -> Result<Vec<Word<S>>, TorsorError> {
        let sys = &self.sys;
        let (na, nb) = (sys.neg(alpha), sys.neg(beta));
        let bma = self.root_sum(beta, na)?;
        let amb = sys.neg(bma);
        let eps = self.n(alpha, nb);
        let x1 = self.proto.x_monomial(1)?;
        let one = a.one();
        let v = a.mul(m).add(&one);
        let c = eps.mul(a).mul(b).mul(m2).add(&one);
        let ci = c.inv()?;
        let g = |r: Root, s: S| Word::gen(r, s);
        let s0 = derived::ds(sys, alpha, a, m)?;
        let s1 = derived::ds(sys, amb, &eps.mul(a).mul(m2), &b.mul(&ci).neg())?;
        let xb = g(nb, m2.mul(&x1));
        let xa = g(na, m.mul(&x1));
        let hv_inv = derived::h(sys, alpha, &v)?.inv();
        let hc = derived::h(sys, bma, &ci)?;
        let tail = g(bma, b.mul(&c).neg());
        let head_a = g(na, m.mul(&x1).div(&v)?);
        let zero = a.zero();
        Ok(vec![
            Word::product([&self.s_map(alpha, a, &xb.mul(&xa), m)?, &hv_inv, &hc, &tail]),
            Word::product([&self.s_map(alpha, a, &xb, &zero)?, &self.s_map(alpha, a, &xa, m)?, &hv_inv, &hc, &tail]),
            Word::product([&self.s_map(alpha, a, &xb, &zero)?, &head_a, &s0, &hc, &tail]),
            Word::product([&xb, &g(amb, eps.mul(a).mul(m2)), &g(bma, b.mul(&ci).neg()), &head_a, &s0, &hc]),
            Word::product([
                &xb,
                &g(bma, b.neg()),
                &s1,
                &derived::h(sys, amb, &ci)?,
                &g(amb, eps.mul(a).mul(&c).mul(m2)),
                &head_a,
                &s0,
                &hc,
            ]),
            Word::product([
                &g(bma, b.neg()),
                &xb,
                &g(na, eps.mul(b).mul(m2).mul(&x1).neg()),
                &s1,
                &g(amb, eps.mul(a).mul(&ci).mul(m2)),
                &g(na, c.mul(m).mul(&x1).div(&v)?),
                &s0,
            ]),
            Word::product([
                &g(bma, b.neg()),
                &g(nb, m2.mul(&ci).mul(&x1)),
                &g(amb, eps.mul(a).mul(&ci).mul(m2)),
                &s1,
                &s0,
                &g(na, c.mul(m).div(&v)?.sub(&eps.mul(b).mul(m2)).mul(&x1)),
            ]),
        ])
    }

    /// Both sides of a relation acting on `t` land in the same class.
    pub fn relation_holds(&self, t: &Triple<S>, rel: &RelationInstance<S>) -> Result<bool, TorsorError> {
        Ok(self.equiv(&self.act(t, &rel.lhs)?, &self.act(t, &rel.rhs)?))
    }
}
