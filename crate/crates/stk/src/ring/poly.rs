//! Sparse multivariate Laurent polynomials over an abstract coefficient ring.

use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; one slot per ring variable.
pub type Mono = SmallVec<[i16; 8]>;

/// Coefficient arithmetic needed by [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("integer coefficient overflow")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("integer coefficient overflow")
    }
    fn neg(&self) -> Self {
        -*self
    }
}

/// Terms are kept sorted by monomial (descending lex) with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C> {
    nvars: usize,
    terms: Vec<(Mono, C)>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, Mono::from_elem(0, nvars), c)
    }

    pub fn monomial(nvars: usize, m: Mono, c: C) -> Self {
        debug_assert_eq!(m.len(), nvars);
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Poly { nvars, terms: vec![(m, c)] }
        }
    }

    pub fn var(nvars: usize, idx: usize, exp: i16, one: C) -> Self {
        let mut m = Mono::from_elem(0, nvars);
        m[idx] = exp;
        Self::monomial(nvars, m, one)
    }

    fn from_map(nvars: usize, map: BTreeMap<Mono, C>) -> Self {
        let mut terms: Vec<(Mono, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut map: BTreeMap<Mono, C> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, map)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    /// Coefficient of the all-zero monomial.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.iter().find(|(m, _)| m.iter().all(|&e| e == 0)).map(|(_, c)| c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut map: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        for (m, c) in &o.terms {
            match map.get_mut(m) {
                Some(e) => *e = e.add(c),
                None => {
                    map.insert(m.clone(), c.clone());
                }
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut map: BTreeMap<Mono, C> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                let c = c1.mul(c2);
                match map.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, map)
    }

    /// `self^e`, with `one` the multiplicative identity of the coefficient ring.
    pub fn pow(&self, e: u32, one: C) -> Self {
        let mut acc = Self::constant(self.nvars, one);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale_mono(&self, m: &Mono, c: &C) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m2, c2)| (m.iter().zip(m2.iter()).map(|(a, b)| a + b).collect(), c.mul(c2)))
                .filter(|(_, c)| !Coeff::is_zero(c))
                .collect(),
        }
    }

    /// Largest exponent of `var` over all terms.
    pub fn max_exp(&self, var: usize) -> Option<i16> {
        self.terms.iter().map(|(m, _)| m[var]).max()
    }

    pub fn min_exp(&self, var: usize) -> Option<i16> {
        self.terms.iter().map(|(m, _)| m[var]).min()
    }

    pub fn filter_terms(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect() }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl Poly<i128> {
    /// Exact division by `d`, or `None` when `d` does not divide `self`.
    ///
    /// Variables flagged in `laurent` may carry negative exponents; the loop is
    /// capped because descent is not well-founded in that case.
    pub fn exact_div(&self, d: &Self, laurent: &[bool]) -> Option<Self> {
        let (lm, lc) = d.leading()?.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, i128)> = Vec::new();
        let cap = 8 * (self.terms.len() + 4) * (d.terms.len() + 1);
        for _ in 0..cap {
            let Some((rm, rc)) = rem.leading().cloned() else {
                return Some(Poly::from_terms(self.nvars, quot));
            };
            let mut qm = Mono::with_capacity(self.nvars);
            for i in 0..self.nvars {
                let e = rm[i] - lm[i];
                if e < 0 && !laurent[i] {
                    return None;
                }
                qm.push(e);
            }
            if rc % lc != 0 {
                return None;
            }
            let qc = rc / lc;
            rem = rem.sub(&d.scale_mono(&qm, &qc));
            quot.push((qm, qc));
        }
        None
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.terms)
    }
}
