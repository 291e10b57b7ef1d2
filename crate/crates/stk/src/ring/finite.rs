//! Finite local rings `Z/p^k` and `F_p[e]/(e^k)`, and Laurent polynomials over them.

use super::poly::Coeff;
use super::RingError;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Both targets are stored as truncated polynomials `c0 + c1 e + ...` with
/// coefficients mod `q`: `Z/p^k` is the case `len = 1, q = p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteRing {
    /// `Z/p^k`
    Zpk { p: u32, k: u32 },
    /// `F_p[e]/(e^k)`
    Dual { p: u32, k: u32 },
}

impl FiniteRing {
    pub fn field(p: u32) -> Self {
        FiniteRing::Zpk { p, k: 1 }
    }

    pub fn prime(&self) -> u32 {
        match *self {
            FiniteRing::Zpk { p, .. } | FiniteRing::Dual { p, .. } => p,
        }
    }

    fn q_len(&self) -> (u32, u8) {
        match *self {
            FiniteRing::Zpk { p, k } => (p.pow(k), 1),
            FiniteRing::Dual { p, k } => (p, k as u8),
        }
    }

    pub fn order(&self) -> u64 {
        let (q, len) = self.q_len();
        (q as u64).pow(len as u32)
    }

    /// Nilpotency index of the maximal ideal.
    pub fn nil_index(&self) -> u32 {
        match *self {
            FiniteRing::Zpk { k, .. } | FiniteRing::Dual { k, .. } => k,
        }
    }

    pub fn elem(&self, coeffs: &[i64]) -> FElem {
        let (q, len) = self.q_len();
        let mut c = [0u32; 4];
        for (i, &v) in coeffs.iter().enumerate().take(len as usize) {
            c[i] = v.rem_euclid(q as i64) as u32;
        }
        FElem { q, len, c }
    }

    pub fn from_int(&self, v: i64) -> FElem {
        self.elem(&[v])
    }

    /// All elements in a fixed order (index order used by coset enumeration).
    pub fn elements(&self) -> Vec<FElem> {
        let (q, len) = self.q_len();
        let n = self.order();
        (0..n)
            .map(|mut i| {
                let mut c = [0u32; 4];
                for slot in c.iter_mut().take(len as usize) {
                    *slot = (i % q as u64) as u32;
                    i /= q as u64;
                }
                FElem { q, len, c }
            })
            .collect()
    }

    pub fn index_of(&self, x: &FElem) -> usize {
        let (q, len) = self.q_len();
        let mut idx = 0u64;
        for i in (0..len as usize).rev() {
            idx = idx * q as u64 + x.c[i] as u64;
        }
        idx as usize
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FElem {
        let (q, len) = self.q_len();
        let mut c = [0u32; 4];
        for slot in c.iter_mut().take(len as usize) {
            *slot = rng.gen_range(0..q);
        }
        FElem { q, len, c }
    }

    pub fn random_maximal<R: Rng>(&self, rng: &mut R) -> FElem {
        let mut x = self.random(rng);
        let p = self.prime();
        x.c[0] -= x.c[0] % p;
        x
    }

    pub fn random_unit<R: Rng>(&self, rng: &mut R) -> FElem {
        loop {
            let x = self.random(rng);
            if x.is_unit() {
                return x;
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            FiniteRing::Zpk { p, k: 1 } => format!("F{p}"),
            FiniteRing::Zpk { p, k } => format!("Z{}", p.pow(k)),
            FiniteRing::Dual { p, k } => format!("F{p}e{k}"),
        }
    }

    /// Accepts `F3`, `Z9`, `Z/9`, `F3e3`, `F3[e]/e^3`.
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let bad = || RingError::UnknownRing(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace("[e]/e^", "e").replace("[eps]/eps^", "e");
        if let Some(rest) = t.strip_prefix('F') {
            if let Some((p, k)) = rest.split_once('e') {
                let p: u32 = p.parse().map_err(|_| bad())?;
                let k: u32 = k.parse().map_err(|_| bad())?;
                if !is_prime(p) || k == 0 || k > 4 {
                    return Err(bad());
                }
                return Ok(FiniteRing::Dual { p, k });
            }
            let p: u32 = rest.parse().map_err(|_| bad())?;
            return if is_prime(p) { Ok(FiniteRing::field(p)) } else { Err(bad()) };
        }
        if let Some(rest) = t.strip_prefix('Z') {
            let n: u32 = rest.trim_start_matches('/').parse().map_err(|_| bad())?;
            for p in 2..=n {
                if is_prime(p) && n.is_multiple_of(p) {
                    let mut k = 0;
                    let mut m = n;
                    while m.is_multiple_of(p) {
                        m /= p;
                        k += 1;
                    }
                    return if m == 1 { Ok(FiniteRing::Zpk { p, k }) } else { Err(bad()) };
                }
            }
        }
        Err(bad())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Element of a [`FiniteRing`]; carries its own modulus so arithmetic is self-contained.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElem {
    q: u32,
    len: u8,
    c: [u32; 4],
}

impl FElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.len as usize]
    }

    fn prime(&self) -> u32 {
        (2..=self.q).find(|p| self.q.is_multiple_of(*p)).unwrap_or(self.q)
    }

    pub fn is_unit(&self) -> bool {
        !self.c[0].is_multiple_of(self.prime())
    }

    /// Member of the maximal ideal.
    pub fn is_maximal(&self) -> bool {
        !self.is_unit()
    }

    pub fn zero_like(&self) -> Self {
        FElem { q: self.q, len: self.len, c: [0; 4] }
    }

    pub fn int_like(&self, v: i64) -> Self {
        let mut c = [0u32; 4];
        c[0] = v.rem_euclid(self.q as i64) as u32;
        FElem { q: self.q, len: self.len, c }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if !self.is_unit() {
            return Err(RingError::NotAUnit(format!("{self:?}")));
        }
        let q = self.q as i64;
        let b0 = modinv(self.c[0] as i64, q);
        let mut b = [0i64; 4];
        b[0] = b0;
        for n in 1..self.len as usize {
            let mut s = 0i64;
            for i in 1..=n {
                s = (s + self.c[i] as i64 * b[n - i]) % q;
            }
            b[n] = (-b0 * s).rem_euclid(q);
        }
        let mut c = [0u32; 4];
        for i in 0..self.len as usize {
            c[i] = b[i] as u32;
        }
        Ok(FElem { q: self.q, len: self.len, c })
    }
}

fn modinv(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i64, 0i64);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(m)
}

impl FElem {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!((self.q, self.len), (o.q, o.len));
        let mut c = [0u32; 4];
        let n = self.len as usize;
        for (ci, (x, y)) in c.iter_mut().zip(self.c.iter().zip(&o.c)).take(n) {
            *ci = ((*x as u64 + *y as u64) % self.q as u64) as u32;
        }
        FElem { c, ..*self }
    }
    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!((self.q, self.len), (o.q, o.len));
        let n = self.len as usize;
        let q = self.q as u64;
        let mut c = [0u32; 4];
        for i in 0..n {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = ((c[i + j] as u64 + self.c[i] as u64 * o.c[j] as u64) % q) as u32;
            }
        }
        FElem { c, ..*self }
    }
    pub fn neg(&self) -> Self {
        let mut c = [0u32; 4];
        for (ci, x) in c.iter_mut().zip(&self.c).take(self.len as usize) {
            *ci = (self.q - x) % self.q;
        }
        FElem { c, ..*self }
    }
}

impl Coeff for FElem {
    fn is_zero(&self) -> bool {
        FElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FElem::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        FElem::neg(self)
    }
}

impl fmt::Debug for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let parts: Vec<String> = (0..self.len as usize)
            .filter(|&i| self.c[i] != 0)
            .map(|i| match i {
                0 => format!("{}", self.c[0]),
                1 => format!("{}e", self.c[1]),
                _ => format!("{}e^{}", self.c[i], i),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Laurent polynomial in `X` over a finite local ring, stored densely from `X^low`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    zero: FElem,
    low: i32,
    coeffs: Vec<FElem>,
}

impl XPoly {
    pub fn constant(c: FElem) -> Self {
        Self::from_coeffs(c.zero_like(), 0, vec![c])
    }

    pub fn monomial(c: FElem, e: i32) -> Self {
        Self::from_coeffs(c.zero_like(), e, vec![c])
    }

    pub fn from_coeffs(zero: FElem, low: i32, coeffs: Vec<FElem>) -> Self {
        let mut p = XPoly { zero, low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero_elem(&self) -> FElem {
        self.zero
    }

    /// Coefficient of `X^e`.
    pub fn coeff(&self, e: i32) -> FElem {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            self.zero
        } else {
            self.coeffs[i as usize]
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i32, FElem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i32, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.coeffs.len() as i32).max(o.low + o.coeffs.len() as i32);
        let coeffs = (low..high).map(|e| self.coeff(e).add(&o.coeff(e))).collect();
        Self::from_coeffs(self.zero, low, coeffs)
    }

    pub fn neg(&self) -> Self {
        XPoly { zero: self.zero, low: self.low, coeffs: self.coeffs.iter().map(FElem::neg).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::from_coeffs(self.zero, 0, vec![]);
        }
        let mut coeffs = vec![self.zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.zero, self.low + o.low, coeffs)
    }

    /// Units are `c X^k (1 + n)` with `c` a unit and `n` nilpotent.
    pub fn inv(&self) -> Result<Self, RingError> {
        let units: Vec<(i32, FElem)> = self.terms().filter(|(_, c)| c.is_unit()).collect();
        if units.len() != 1 {
            return Err(RingError::NotAUnit(format!("{self:?}")));
        }
        let (k, c) = units[0];
        let lead_inv = XPoly::monomial(c.inv()?, -k);
        let one = XPoly::constant(self.zero.int_like(1));
        let n = self.mul(&lead_inv).add(&one.neg());
        let mut series = one.clone();
        let mut power = one;
        let nil = 1 + 4 * (self.zero.len as u32).max(self.q_exp());
        for _ in 0..nil {
            power = power.mul(&n.neg());
            if power.is_zero() {
                break;
            }
            series = series.add(&power);
        }
        Ok(series.mul(&lead_inv))
    }

    fn q_exp(&self) -> u32 {
        let p = self.zero.prime();
        let mut q = self.zero.q;
        let mut k = 0;
        while q > 1 {
            q /= p;
            k += 1;
        }
        k
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Substitutes a unit for `X`.
    pub fn eval_at(&self, x: &FElem) -> Result<FElem, RingError> {
        let xi = x.inv()?;
        let mut acc = self.zero;
        for (e, c) in self.terms() {
            let base = if e >= 0 { *x } else { xi };
            let mut t = c;
            for _ in 0..e.unsigned_abs() {
                t = t.mul(&base);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("({c})X^{e}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
