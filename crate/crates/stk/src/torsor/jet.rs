//! First-order data of matrix images at `X = 0`.

use super::TorsorError;
use crate::oracle::{Matrix, MatrixRep, Predicate};
use crate::ring::LocalPair;
use crate::rootsys::Root;
use crate::word::Word;

pub fn constant_part<S: LocalPair>(m: &Matrix<S>) -> Matrix<S> {
    m.map(|e| e.x_component(0))
}

/// Coefficient matrix of `X^1`.
pub fn linear_part<S: LocalPair>(m: &Matrix<S>) -> Result<Matrix<S>, TorsorError> {
    let xi = m.get(0, 0).x_monomial(-1)?;
    Ok(m.map(|e| e.x_component(1).mul(&xi)))
}

/// Coordinate of the root vector `e_root` in a Lie algebra element given by its matrix.
pub fn root_coordinate<S: LocalPair>(rep: &MatrixRep, root: Root, y: &Matrix<S>) -> S {
    let (r, c, s) = rep.patterns[root][0];
    let v = y.get(r, c).clone();
    if s > 0 {
        v
    } else {
        v.neg()
    }
}

/// The coset value `p_alpha` of an element of `P_alpha(*)` from its image `p`:
/// the `e_{-alpha}` coordinate of `p(0)^-1 p'(0)`.
///
/// This is a homomorphism on `P_alpha(*)` (the functional is invariant under the
/// adjoint action of `Z_alpha(A, M)`), it vanishes on every generator of `P_alpha(0)`
/// and takes `x_{-alpha}(mX)` to `m`, so it agrees with the factor-counting definition.
pub fn p_value<S: LocalPair>(rep: &MatrixRep, alpha: Root, p: &Matrix<S>) -> Result<S, TorsorError> {
    if !p.satisfies(Predicate::EntriesInPoly) {
        return Err(TorsorError::NotNonNegative);
    }
    let c0 = constant_part(p);
    let l1 = linear_part(p)?;
    let y = if c0.is_identity() { l1 } else { c0.inverse()?.mul(&l1) };
    Ok(root_coordinate(rep, rep.sys.neg(alpha), &y))
}

/// Image-level shadow of membership in the coset `P_alpha(m)`: entries in `A[X]`,
/// congruent to the identity modulo `M`, value at zero centralizing `X_alpha`, and
/// coset value `m`.
pub fn in_coset<S: LocalPair>(rep: &MatrixRep, alpha: Root, p: &Matrix<S>, m: &S) -> Result<bool, TorsorError> {
    if !p.satisfies(Predicate::EntriesInPoly) || !p.satisfies(Predicate::IdentityModM) {
        return Ok(false);
    }
    let c0 = constant_part(p);
    let one = p.get(0, 0).one();
    let xa = rep.generator(alpha, &one);
    if c0.mul(&xa) != xa.mul(&c0) {
        return Ok(false);
    }
    Ok(p_value(rep, alpha, p)? == *m)
}

/// Writes a constant matrix as an ordered product of root elements, reading one
/// level of roots at a time. Fails unless the product reproduces the matrix.
pub fn peel<S: LocalPair>(rep: &MatrixRep, levels: &[Vec<Root>], m: &Matrix<S>) -> Result<Word<S>, TorsorError> {
    let mut cur = m.clone();
    let mut out = Word::empty();
    for level in levels {
        let coeffs: Vec<(Root, S)> =
            level.iter().map(|&r| (r, root_coordinate(rep, r, &cur))).filter(|(_, c)| !c.is_zero()).collect();
        for (r, c) in &coeffs {
            cur.apply_elementary_left(&rep.patterns[*r], &c.neg());
        }
        out.letters.extend(coeffs);
    }
    if cur.is_identity() {
        Ok(out)
    } else {
        Err(TorsorError::TrackingLost("value at zero is not in the expected unipotent subgroup".into()))
    }
}

/// Roots with positive pairing against `alpha`, grouped so that [`peel`] applies.
pub fn acute_levels(sys: &crate::rootsys::RootSystem, alpha: Root) -> Vec<Vec<Root>> {
    let first = (0..sys.len()).filter(|&g| g != alpha && sys.pairing(g, alpha) == 1).collect();
    vec![first, vec![alpha]]
}

/// Substitutes `X = 0` letter by letter; every coefficient must lie in `A[X]`.
pub fn eval_at_zero<S: LocalPair>(w: &Word<S>) -> Result<Word<S>, TorsorError> {
    let mut out = Word::empty();
    for (r, s) in &w.letters {
        if s.x_range().is_some_and(|(lo, _)| lo < 0) {
            return Err(TorsorError::NotNonNegative);
        }
        let c = s.x_component(0);
        if !c.is_zero() {
            out.letters.push((*r, c));
        }
    }
    Ok(out)
}
