//! Todd-Coxeter coset enumeration of `St(Phi, R)` for a finite ring `R`, over the
//! trivial subgroup, giving the regular permutation representation.

use super::OracleError;
use crate::constants::ConstantTable;
use crate::ring::{FElem, FiniteRing, Scalar};
use crate::rootsys::{Root, RootSystem};
use crate::word::Word;

const NONE: u32 = u32::MAX;

/// Generators `x_r(s)` for nonzero `s`, closed under inversion, plus relators R1-R3.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: FiniteRing,
    pub elems: Vec<FElem>,
    /// `(root, element index)` for each generator.
    pub gens: Vec<(Root, usize)>,
    pub inverse: Vec<usize>,
    pub relators: Vec<Vec<usize>>,
    nonzero: usize,
}

impl Presentation {
    pub fn steinberg(sys: &RootSystem, table: &ConstantTable, ring: FiniteRing) -> Self {
        let elems = ring.elements();
        let nonzero = elems.len() - 1;
        let mut gens = Vec::new();
        for r in 0..sys.len() {
            for e in 1..elems.len() {
                gens.push((r, e));
            }
        }
        let gi = |r: Root, e: &FElem| -> Option<usize> {
            let k = ring.index_of(e);
            (k != 0).then(|| r * nonzero + k - 1)
        };
        let inverse = gens.iter().map(|(r, e)| gi(*r, &elems[*e].neg()).unwrap()).collect();
        let mut relators: Vec<Vec<usize>> = Vec::new();
        let nz: Vec<&FElem> = elems.iter().skip(1).collect();
        for r in 0..sys.len() {
            for a in &nz {
                for b in &nz {
                    let s = a.add(b);
                    if Scalar::is_zero(&s) {
                        continue;
                    }
                    relators.push(vec![gi(r, a).unwrap(), gi(r, b).unwrap(), gi(r, &s.neg()).unwrap()]);
                }
            }
        }
        for al in 0..sys.len() {
            for be in 0..sys.len() {
                if be == al || be == sys.neg(al) {
                    continue;
                }
                for a in &nz {
                    for b in &nz {
                        let mut rel = vec![
                            gi(al, a).unwrap(),
                            gi(be, b).unwrap(),
                            gi(al, &a.neg()).unwrap(),
                            gi(be, &b.neg()).unwrap(),
                        ];
                        if let Some(s) = sys.add(al, be) {
                            let v = a.mul(b).mul(&a.int(table.get(al, be) as i64)).neg();
                            if let Some(g) = gi(s, &v) {
                                rel.push(g);
                            }
                        }
                        relators.push(rel);
                    }
                }
            }
        }
        relators.sort_by_key(|r| r.len());
        Presentation { ring, elems, gens, inverse, relators, nonzero }
    }

    /// Generator sequence of a word; zero letters are dropped.
    pub fn letters(&self, w: &Word<FElem>) -> Vec<usize> {
        w.letters
            .iter()
            .filter_map(|(r, s)| {
                let k = self.ring.index_of(s);
                (k != 0).then(|| r * self.nonzero + k - 1)
            })
            .collect()
    }
}

/// Completed coset table for the trivial subgroup.
#[derive(Clone, Debug)]
pub struct EnumHandle {
    pub pres: Presentation,
    table: Vec<Vec<u32>>,
}

struct Enumerator<'a> {
    pres: &'a Presentation,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    limit: usize,
    queue: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn new_coset(&mut self) -> Result<u32, OracleError> {
        if self.table.len() >= self.limit {
            return Err(OracleError::CosetLimitExceeded(self.limit));
        }
        let c = self.table.len() as u32;
        self.table.push(vec![NONE; self.pres.gens.len()]);
        self.parent.push(c);
        Ok(c)
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, OracleError> {
        let d = self.new_coset()?;
        self.table[c as usize][x] = d;
        self.table[d as usize][self.pres.inverse[x]] = c;
        Ok(d)
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.find(k), self.find(l));
        if k == l {
            return;
        }
        let (m, n) = if k < l { (k, l) } else { (l, k) };
        self.parent[n as usize] = m;
        self.queue.push(n);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.pres.gens.len() {
                let f = self.table[e as usize][x];
                if f == NONE {
                    continue;
                }
                let xi = self.pres.inverse[x];
                if self.table[f as usize][xi] == e {
                    self.table[f as usize][xi] = NONE;
                }
                let (e1, f1) = (self.find(e), self.find(f));
                let t = self.table[e1 as usize][x];
                if t != NONE {
                    self.merge(f1, t);
                } else {
                    let u = self.table[f1 as usize][xi];
                    if u != NONE {
                        self.merge(e1, u);
                    } else {
                        self.table[e1 as usize][x] = f1;
                        self.table[f1 as usize][xi] = e1;
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, rel: &[usize]) -> Result<(), OracleError> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, rel.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][rel[i]] != NONE {
                f = self.table[f as usize][rel[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b as usize][self.pres.inverse[rel[j as usize]]] != NONE {
                b = self.table[b as usize][self.pres.inverse[rel[j as usize]]];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f as usize][rel[i]] = b;
                self.table[b as usize][self.pres.inverse[rel[i]]] = f;
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    fn run(mut self) -> Result<Vec<Vec<u32>>, OracleError> {
        self.new_coset()?;
        let ngens = self.pres.gens.len();
        let mut c = 0u32;
        while (c as usize) < self.table.len() {
            for r in 0..self.pres.relators.len() {
                if !self.alive(c) {
                    break;
                }
                let pres = self.pres;
                self.scan_and_fill(c, &pres.relators[r])?;
            }
            for x in 0..ngens {
                if self.alive(c) && self.table[c as usize][x] == NONE {
                    self.define(c, x)?;
                }
            }
            c += 1;
        }
        // Compact live cosets.
        let live: Vec<u32> = (0..self.table.len() as u32).filter(|&c| self.alive(c)).collect();
        let mut renum = vec![NONE; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            renum[c as usize] = k as u32;
        }
        let mut out = Vec::with_capacity(live.len());
        for &c in &live {
            let row = (0..ngens)
                .map(|x| {
                    let t = self.table[c as usize][x];
                    renum[self.find(t) as usize]
                })
                .collect();
            out.push(row);
        }
        Ok(out)
    }
}

pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

impl EnumHandle {
    pub fn enumerate(
        sys: &RootSystem,
        table: &ConstantTable,
        ring: FiniteRing,
        limit: usize,
    ) -> Result<Self, OracleError> {
        let pres = Presentation::steinberg(sys, table, ring);
        let e = Enumerator { pres: &pres, table: Vec::new(), parent: Vec::new(), limit, queue: Vec::new() };
        let table = e.run()?;
        Ok(EnumHandle { pres, table })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Image of the identity coset under `w`; equal words give equal cosets.
    pub fn trace(&self, w: &Word<FElem>) -> u32 {
        self.pres.letters(w).iter().fold(0u32, |c, &x| self.table[c as usize][x])
    }

    pub fn equal(&self, a: &Word<FElem>, b: &Word<FElem>) -> bool {
        self.trace(a) == self.trace(b)
    }

    pub fn is_identity(&self, w: &Word<FElem>) -> bool {
        self.trace(w) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::MatrixRep;
    use crate::rootsys::Family;
    use std::sync::Arc;

    fn handle(ring: &str) -> EnumHandle {
        let sys = Arc::new(RootSystem::build(Family::A, 2).unwrap());
        let rep = MatrixRep::build(sys.clone()).unwrap();
        let table = ConstantTable::from_representation(&rep);
        EnumHandle::enumerate(&sys, &table, FiniteRing::parse(ring).unwrap(), DEFAULT_COSET_LIMIT).unwrap()
    }

    #[test]
    fn sl3_f2_order() {
        let h = handle("F2");
        assert_eq!(h.order(), 168);
    }

    #[test]
    fn sl3_f3_order_and_words() {
        let h = handle("F3");
        assert_eq!(h.order(), 5616);
        let one = h.pres.elems[1];
        let two = one.add(&one);
        let w = Word::gen(0, one).mul(&Word::gen(0, one));
        assert!(h.equal(&w, &Word::gen(0, two)));
        assert!(!h.is_identity(&Word::gen(0, one)));
        assert!(h.is_identity(&Word::gen(0, one).pow(3)));
    }
}
