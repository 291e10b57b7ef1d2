//! Word equality oracles: matrix images (symbolic or sampled) and exact coset
//! enumeration over tiny finite rings.

pub mod enumerate;
pub mod matrix;
pub mod rep;

pub use enumerate::{EnumHandle, Presentation};
pub use matrix::{Matrix, Predicate};
pub use rep::MatrixRep;

use crate::ring::{Assignment, FiniteRing, RingCtx, RingElem, RingError, XPoly};
use crate::word::Word;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("no matrix representation for {0}")]
    NoRepresentation(String),
    #[error("coset enumeration exceeded {0} cosets")]
    CosetLimitExceeded(usize),
    #[error("ring element outside the enumerated ring: {0}")]
    OutsideRing(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("could not find a sample point with all denominators invertible")]
    NoGoodSample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ProvedEqualAtImage,
    ProbablyEqual,
    Refuted,
}

impl Verdict {
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::Refuted)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Strategy {
    Symbolic,
    Randomized { target: FiniteRing, seeds: u32 },
}

/// Sample point whose denominators are all invertible at the listed elements.
pub fn good_sample(
    ctx: &Arc<RingCtx>,
    target: FiniteRing,
    seed: u64,
    check: &[&Word<RingElem>],
) -> Result<Assignment, OracleError> {
    for k in 0..64u64 {
        let asg = Assignment::sample(ctx, target, seed.wrapping_add(k << 32));
        let ok = check.iter().all(|w| w.letters.iter().all(|(_, s)| asg.eval_keep_x(s).is_ok()));
        if ok {
            return Ok(asg);
        }
    }
    Err(OracleError::NoGoodSample)
}

pub fn specialize(w: &Word<RingElem>, asg: &Assignment) -> Result<Word<XPoly>, RingError> {
    w.map_coeffs(|s| asg.eval_keep_x(s))
}

/// Image-level equality of two words.
pub fn equal(
    rep: &MatrixRep,
    lhs: &Word<RingElem>,
    rhs: &Word<RingElem>,
    proto: &RingElem,
    strategy: Strategy,
    seed: u64,
) -> Result<Verdict, OracleError> {
    match strategy {
        Strategy::Symbolic => {
            let same = rep.eval(lhs, proto) == rep.eval(rhs, proto);
            Ok(if same { Verdict::ProvedEqualAtImage } else { Verdict::Refuted })
        }
        Strategy::Randomized { target, seeds } => {
            let verdicts: Vec<Result<bool, OracleError>> = crate::par::map_range(seeds as usize, |i| {
                let asg = good_sample(proto.ctx(), target, seed.wrapping_add(i as u64), &[lhs, rhs])?;
                let (l, r) = (specialize(lhs, &asg)?, specialize(rhs, &asg)?);
                let p = asg.eval_keep_x(&crate::ring::Scalar::one(proto))?;
                Ok(rep.eval(&l, &p) == rep.eval(&r, &p))
            });
            for v in verdicts {
                if !v? {
                    return Ok(Verdict::Refuted);
                }
            }
            Ok(Verdict::ProbablyEqual)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ConstantTable;
    use crate::rootsys::{AngleClass, Family, RootSystem};

    #[test]
    fn r2_symbolic_and_generic_refutation() {
        let sys = Arc::new(RootSystem::build(Family::D, 4).unwrap());
        let rep = MatrixRep::build(sys.clone()).unwrap();
        let table = ConstantTable::from_representation(&rep);
        let ctx = RingCtx::new(&["a", "b"], &[], &[], false).unwrap();
        let a = RingElem::var(&ctx, "a").unwrap();
        let b = RingElem::var(&ctx, "b").unwrap();
        let (al, be) = (sys.parse_root("[1,-2]").unwrap(), sys.parse_root("[2,3]").unwrap());
        let AngleClass::SumIsRoot(s) = sys.angle_class(al, be) else { panic!() };
        let lhs = Word::comm(&Word::gen(al, a.clone()), &Word::gen(be, b.clone()));
        let n = RingElem::int(&ctx, table.get(al, be) as i64);
        let rhs = Word::gen(s, &n * &a * &b);
        assert_eq!(equal(&rep, &lhs, &rhs, &a, Strategy::Symbolic, 0).unwrap(), Verdict::ProvedEqualAtImage);
        let bad = equal(&rep, &Word::gen(al, a.clone()), &Word::gen(al, b.clone()), &a, Strategy::Symbolic, 0);
        assert_eq!(bad.unwrap(), Verdict::Refuted);
        let rnd = Strategy::Randomized { target: FiniteRing::parse("Z9").unwrap(), seeds: 8 };
        assert_eq!(equal(&rep, &lhs, &rhs, &a, rnd, 1).unwrap(), Verdict::ProbablyEqual);
    }
}
