//! Vector representations of the elementary groups of types A and D.

use super::matrix::Matrix;
use super::OracleError;
use crate::ring::Scalar;
use crate::rootsys::{Family, Root, RootSystem};
use crate::word::Word;
use std::sync::Arc;

/// `x_r(a) = I + a * sum(sign * E_{row,col})` over `patterns[r]`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub sys: Arc<RootSystem>,
    pub dim: usize,
    pub patterns: Vec<Vec<(usize, usize, i8)>>,
}

impl MatrixRep {
    /// A_l acts on `l+1` coordinates; D_l on `2l` coordinates indexed `1..l, -1..-l`
    /// with the split form pairing `i` and `-i`.
    pub fn build(sys: Arc<RootSystem>) -> Result<Self, OracleError> {
        let (dim, patterns) = match sys.family {
            Family::A => {
                let pats = sys
                    .roots
                    .iter()
                    .map(|v| {
                        let i = v.iter().position(|&c| c == 1).unwrap();
                        let j = v.iter().position(|&c| c == -1).unwrap();
                        vec![(i, j, 1)]
                    })
                    .collect();
                (sys.rank + 1, pats)
            }
            Family::D => {
                let l = sys.rank;
                let idx = |k: i32| -> usize {
                    if k > 0 {
                        (k - 1) as usize
                    } else {
                        2 * l - (-k) as usize
                    }
                };
                let pats = sys
                    .roots
                    .iter()
                    .map(|v| {
                        let nz: Vec<(i32, i32)> =
                            v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(p, c)| (p as i32 + 1, *c)).collect();
                        let ((i, si), (j, sj)) = (nz[0], nz[1]);
                        match (si, sj) {
                            (1, -1) => vec![(idx(i), idx(j), 1), (idx(-j), idx(-i), -1)],
                            (-1, 1) => vec![(idx(j), idx(i), 1), (idx(-i), idx(-j), -1)],
                            (1, 1) => vec![(idx(i), idx(-j), 1), (idx(j), idx(-i), -1)],
                            _ => vec![(idx(-j), idx(i), 1), (idx(-i), idx(j), -1)],
                        }
                    })
                    .collect();
                (2 * l, pats)
            }
            Family::E => return Err(OracleError::NoRepresentation(sys.name())),
        };
        Ok(MatrixRep { sys, dim, patterns })
    }

    pub fn generator<S: Scalar>(&self, root: Root, a: &S) -> Matrix<S> {
        let mut m = Matrix::identity(self.dim, a);
        m.apply_elementary(&self.patterns[root], a);
        m
    }

    /// Product of generator images, left to right.
    pub fn eval<S: Scalar>(&self, word: &Word<S>, proto: &S) -> Matrix<S> {
        let mut m = Matrix::identity(self.dim, proto);
        for (r, a) in &word.letters {
            m.apply_elementary(&self.patterns[*r], a);
        }
        m
    }

    /// Antidiagonal split form for type D; `None` for type A.
    pub fn form<S: Scalar>(&self, proto: &S) -> Option<Matrix<S>> {
        if self.sys.family != Family::D {
            return None;
        }
        let n = self.dim;
        let mut f = Matrix::identity(n, proto);
        for i in 0..n {
            f.set(i, i, proto.zero());
        }
        for i in 0..n {
            f.set(i, n - 1 - i, proto.one());
        }
        Some(f)
    }

    /// `g^T F g = F`.
    pub fn preserves_form<S: Scalar>(&self, g: &Matrix<S>, proto: &S) -> bool {
        match self.form(proto) {
            None => true,
            Some(f) => g.transpose().mul(&f).mul(g) == f,
        }
    }
}
