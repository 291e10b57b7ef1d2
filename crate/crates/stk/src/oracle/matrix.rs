//! Dense square matrices over a [`Scalar`] domain.

use crate::ring::{LocalPair, RingError, Scalar};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(n: usize, proto: &S) -> Self {
        let mut data = vec![proto.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = proto.one();
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let zero = self.data[0].zero();
        let mut data = vec![zero.clone(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] = data[i * n + j].add(&a.mul(b));
                    }
                }
            }
        }
        Matrix { n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n).map(|k| self.data[(k % n) * n + k / n].clone()).collect();
        Matrix { n, data }
    }

    /// Right multiplication by `I + a * sum(sign * E_{row,col})`, in place.
    pub fn apply_elementary(&mut self, pattern: &[(usize, usize, i8)], a: &S) {
        let n = self.n;
        // (M (I + aE_rc))_{i,c} = M_{i,c} + a M_{i,r}; pattern entries never chain.
        let mut updates: Vec<(usize, usize, S)> = Vec::new();
        for &(r, c, s) in pattern {
            let coef = if s > 0 { a.clone() } else { a.neg() };
            for i in 0..n {
                let m = &self.data[i * n + r];
                if !m.is_zero() {
                    updates.push((i, c, m.mul(&coef)));
                }
            }
        }
        for (i, c, v) in updates {
            self.data[i * n + c] = self.data[i * n + c].add(&v);
        }
    }

    /// Left multiplication by `I + a * sum(sign * E_{row,col})`, in place.
    pub fn apply_elementary_left(&mut self, pattern: &[(usize, usize, i8)], a: &S) {
        let n = self.n;
        let mut updates: Vec<(usize, usize, S)> = Vec::new();
        for &(r, c, s) in pattern {
            let coef = if s > 0 { a.clone() } else { a.neg() };
            for j in 0..n {
                let m = &self.data[c * n + j];
                if !m.is_zero() {
                    updates.push((r, j, coef.mul(m)));
                }
            }
        }
        for (r, j, v) in updates {
            self.data[r * n + j] = self.data[r * n + j].add(&v);
        }
    }

    /// Gauss-Jordan inverse; pivots are chosen among entries `inv` accepts.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = Matrix::identity(n, &self.data[0]);
        for k in 0..n {
            let (piv, pinv) = (k..n)
                .find_map(|i| a.get(i, k).inv().ok().map(|v| (i, v)))
                .ok_or_else(|| RingError::NotAUnit(format!("no invertible pivot in column {k}")))?;
            for j in 0..n {
                a.data.swap(k * n + j, piv * n + j);
                b.data.swap(k * n + j, piv * n + j);
            }
            for j in 0..n {
                a.data[k * n + j] = a.data[k * n + j].mul(&pinv);
                b.data[k * n + j] = b.data[k * n + j].mul(&pinv);
            }
            for i in 0..n {
                let f = a.get(i, k).clone();
                if i == k || f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (ak, bk) = (a.data[k * n + j].mul(&f), b.data[k * n + j].mul(&f));
                    a.data[i * n + j] = a.data[i * n + j].sub(&ak);
                    b.data[i * n + j] = b.data[i * n + j].sub(&bk);
                }
            }
        }
        Ok(b)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }
}

/// Image-level membership predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    EntriesInB,
    ConstantInX,
    IdentityModM,
    /// Entries in `A[X]` (no negative powers of `X`).
    EntriesInPoly,
    /// Entries in `A[X^-1]`.
    EntriesInInversePoly,
}

impl<S: LocalPair> Matrix<S> {
    pub fn satisfies(&self, p: Predicate) -> bool {
        let n = self.n;
        let diag_minus = |i: usize, j: usize| {
            let e = self.get(i, j);
            if i == j {
                e.sub(&e.one())
            } else {
                e.clone()
            }
        };
        match p {
            Predicate::EntriesInB => self.data.iter().all(|e| e.in_b()),
            Predicate::ConstantInX => self.data.iter().all(|e| e.constant_in_x()),
            Predicate::IdentityModM => (0..n).all(|i| (0..n).all(|j| diag_minus(i, j).in_m())),
            Predicate::EntriesInPoly => self.data.iter().all(|e| e.x_range().is_none_or(|(lo, _)| lo >= 0)),
            Predicate::EntriesInInversePoly => self.data.iter().all(|e| e.x_range().is_none_or(|(_, hi)| hi <= 0)),
        }
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}
