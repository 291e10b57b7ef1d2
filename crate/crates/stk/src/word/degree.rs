//! Degrees of homogeneous letters and the rewriter lowering them to a bound.

use super::Word;
use crate::constants::ConstantTable;
use crate::ring::{LocalPair, RingError};
use crate::rootsys::{Companion, Root, RootError, RootSystem};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("degree bound must be at least 1, got {0}")]
    BadBound(i32),
}

/// Degree of `x_root(coeff)` in the grading where `t = X^-1` has degree 1.
pub fn degree_of<S: LocalPair>(letter: &(Root, S)) -> Result<i32, RingError> {
    letter.1.degree()
}

/// Largest letter degree of a word of homogeneous letters; `None` for the empty word.
pub fn word_degree<S: LocalPair>(w: &Word<S>) -> Result<Option<i32>, RingError> {
    let mut best = None;
    for l in &w.letters {
        let d = degree_of(l)?;
        best = Some(best.map_or(d, |b: i32| b.max(d)));
    }
    Ok(best)
}

/// Splits every letter into its homogeneous components (an R1 rewrite).
pub fn split_homogeneous<S: LocalPair>(w: &Word<S>) -> Word<S> {
    let mut letters = Vec::new();
    for (r, s) in &w.letters {
        if let Some((lo, hi)) = s.x_range() {
            for e in (lo..=hi).rev() {
                let c = s.x_component(e);
                if !c.is_zero() {
                    letters.push((*r, c));
                }
            }
        }
    }
    Word { letters }
}

/// Replaces `x_alpha(a t^k)`, `k > n`, by `[x_{alpha-beta}(N a t^(k-1)), x_beta(t)]`
/// with `beta` at an acute angle to `alpha`, recursively.
pub struct Reducer<'a> {
    pub sys: &'a RootSystem,
    pub table: &'a ConstantTable,
    pub mode: Companion,
}

impl<'a> Reducer<'a> {
    pub fn new(sys: &'a RootSystem, table: &'a ConstantTable) -> Self {
        Reducer { sys, table, mode: Companion::Acute }
    }

    pub fn with_mode(mut self, mode: Companion) -> Self {
        self.mode = mode;
        self
    }

    pub fn reduce<S: LocalPair>(&self, w: &Word<S>, n: i32) -> Result<Word<S>, DegreeError> {
        if n < 1 {
            return Err(DegreeError::BadBound(n));
        }
        let mut out = Word::empty();
        for l in split_homogeneous(w).letters {
            self.reduce_letter(l, n, &mut out)?;
        }
        Ok(out)
    }

    fn reduce_letter<S: LocalPair>(&self, (alpha, c): (Root, S), n: i32, out: &mut Word<S>) -> Result<(), DegreeError> {
        let k = c.degree()?;
        if k <= n {
            out.letters.push((alpha, c));
            return Ok(());
        }
        let beta = self.sys.acute_companion(alpha, self.mode)?;
        let gamma = self.sys.sub(alpha, beta).ok_or(RootError::NoCompanion)?;
        let sign = c.int(self.table.get(gamma, beta) as i64);
        let lower = c.mul(&sign).mul(&c.x_monomial(1)?);
        let t = c.x_monomial(-1)?;
        for (r, s) in Word::comm(&Word::gen(gamma, lower), &Word::gen(beta, t)).letters {
            self.reduce_letter((r, s), n, out)?;
        }
        Ok(())
    }
}

pub fn reduce_degree<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    w: &Word<S>,
    n: i32,
) -> Result<Word<S>, DegreeError> {
    Reducer::new(sys, table).reduce(w, n)
}
