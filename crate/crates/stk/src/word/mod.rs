//! Steinberg words: formal products of root unipotents `x_alpha(s)`.
//!
//! Only relation R1 (merging adjacent letters on the same root) is ever applied
//! automatically; everything else is left to the oracles.

pub mod degree;
pub mod derived;
pub mod relations;

pub use degree::{degree_of, reduce_degree, DegreeError, Reducer};
pub use derived::{c, ds, h, sym, w, x, z, DerivedKind};
pub use relations::{instantiate_relations, relation_degree, DegreeWindow, RelationInstance, RelationKind};

use crate::ring::{RingError, Scalar};
use crate::rootsys::Root;

#[derive(Clone, Debug, PartialEq)]
pub struct Word<S> {
    pub letters: Vec<(Root, S)>,
}

impl<S> Default for Word<S> {
    fn default() -> Self {
        Word { letters: Vec::new() }
    }
}

impl<S: Scalar> Word<S> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn gen(root: Root, coeff: S) -> Self {
        Word { letters: vec![(root, coeff)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(o.letters.iter().cloned());
        Word { letters }
    }

    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend(p.letters.iter().cloned());
        }
        Word { letters }
    }

    pub fn inv(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|(r, s)| (*r, s.neg())).collect() }
    }

    /// `x^y = y^-1 x y`.
    pub fn conj(x: &Self, y: &Self) -> Self {
        Self::product([&y.inv(), x, y])
    }

    /// `^y x = y x y^-1`.
    pub fn lconj(y: &Self, x: &Self) -> Self {
        Self::product([y, x, &y.inv()])
    }

    /// `[x, y] = x y x^-1 y^-1`.
    pub fn comm(x: &Self, y: &Self) -> Self {
        Self::product([x, y, &x.inv(), &y.inv()])
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Self::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Merges adjacent letters on equal roots and drops zero letters.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(Root, S)> = Vec::with_capacity(self.letters.len());
        for (r, s) in &self.letters {
            if s.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((lr, ls)) if lr == r => {
                    let sum = ls.add(s);
                    if sum.is_zero() {
                        out.pop();
                    } else {
                        *ls = sum;
                    }
                }
                _ => out.push((*r, s.clone())),
            }
        }
        Word { letters: out }
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> Result<T, RingError>) -> Result<Word<T>, RingError> {
        let letters = self.letters.iter().map(|(r, s)| Ok((*r, f(s)?))).collect::<Result<_, RingError>>()?;
        Ok(Word { letters })
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.letters.iter().map(|(r, _)| *r)
    }
}
