//! Ideal tags and the double ring `R x_{R/I} R`.

use super::{LocalPair, RingElem, RingError, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealSpec {
    /// `M[X]`
    MPoly,
    /// `X M[X]`
    XMPoly,
    /// `X^2 M[X]`
    X2MPoly,
    /// `M[X, X^-1]`
    MLaurent,
    /// `M`-multiples with an optional lower bound on the `X`-degree.
    Custom { min_x_degree: Option<i32> },
}

/// Pair of elements congruent modulo `ideal`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleElem {
    first: RingElem,
    second: RingElem,
    ideal: IdealSpec,
}

impl DoubleElem {
    pub fn new(first: RingElem, second: RingElem, ideal: IdealSpec) -> Result<Self, RingError> {
        if !first.sub(&second).in_ideal(ideal) {
            return Err(RingError::CongruenceViolation);
        }
        Ok(DoubleElem { first, second, ideal })
    }

    /// Diagonal embedding.
    pub fn delta(r: RingElem, ideal: IdealSpec) -> Self {
        DoubleElem { first: r.clone(), second: r, ideal }
    }

    pub fn p0(&self) -> &RingElem {
        &self.first
    }

    pub fn p1(&self) -> &RingElem {
        &self.second
    }

    pub fn ideal(&self) -> IdealSpec {
        self.ideal
    }

    pub fn add(&self, o: &Self) -> Self {
        DoubleElem { first: self.first.add(&o.first), second: self.second.add(&o.second), ideal: self.ideal }
    }

    pub fn mul(&self, o: &Self) -> Self {
        DoubleElem { first: self.first.mul(&o.first), second: self.second.mul(&o.second), ideal: self.ideal }
    }

    pub fn neg(&self) -> Self {
        DoubleElem { first: self.first.neg(), second: self.second.neg(), ideal: self.ideal }
    }
}
