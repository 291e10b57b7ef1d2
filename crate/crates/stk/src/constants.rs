//! Structure constants `N_{a,b} = +-1` for simply-laced systems.

use crate::oracle::MatrixRep;
use crate::rootsys::{Root, RootSystem};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    FromRepresentation,
    Extraspecial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTable {
    pub source: Source,
    values: BTreeMap<(Root, Root), i8>,
}

/// One failed identity, with the roots involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry(Root, Root),
    Negation(Root, Root),
    Cyclic(Root, Root),
    Cocycle(Root, Root, Root),
    Missing(Root, Root),
}

impl ConstantTable {
    /// Reads `N_{a,b}` from `[x_a(1), x_b(1)] = x_{a+b}(N_{a,b})` in the representation.
    pub fn from_representation(rep: &MatrixRep) -> Self {
        let sys = &rep.sys;
        let one = 1i64;
        let mut values = BTreeMap::new();
        for a in 0..sys.len() {
            for b in 0..sys.len() {
                let Some(s) = sys.add(a, b) else { continue };
                let comm = int_mat(rep, &[(a, one), (b, one), (a, -one), (b, -one)]);
                let (r, c, sign) = rep.patterns[s][0];
                let entry = comm[r][c];
                values.insert((a, b), (entry * sign as i64) as i8);
            }
        }
        ConstantTable { source: Source::FromRepresentation, values }
    }

    /// Sign table from a bimultiplicative cocycle on the root lattice, rescaled so
    /// that every extraspecial pair carries `+1`.
    pub fn extraspecial(sys: &RootSystem) -> Self {
        let coords: Vec<Vec<i32>> = (0..sys.len()).map(|r| sys.simple_coords(r)).collect();
        let rank = sys.rank;
        let simple = &sys.simple_roots;
        // f(i,j) = 1 on the diagonal and for i<j adjacent; eps = (-1)^{sum a_i b_j f(i,j)}.
        let f = |i: usize, j: usize| -> i32 { i32::from(i == j || (i < j && sys.pairing(simple[i], simple[j]) == -1)) };
        let eps = |a: Root, b: Root| -> i8 {
            let mut e = 0;
            for i in 0..rank {
                for j in 0..rank {
                    e += coords[a][i] * coords[b][j] * f(i, j);
                }
            }
            if e.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        };
        let sgn = |r: Root| -> i8 {
            if sys.is_positive(r) {
                1
            } else {
                -1
            }
        };
        let mut values = BTreeMap::new();
        for a in 0..sys.len() {
            for b in 0..sys.len() {
                if let Some(s) = sys.add(a, b) {
                    values.insert((a, b), eps(a, b) * sgn(a) * sgn(b) * sgn(s));
                }
            }
        }
        let raw = ConstantTable { source: Source::Extraspecial, values };
        let height = |r: Root| coords[r].iter().sum::<i32>();
        let mut pos: Vec<Root> = sys.positive_roots().collect();
        pos.sort_by_key(|&r| (height(r), r));
        let order: BTreeMap<Root, usize> = pos.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut scale = vec![1i8; sys.len()];
        for &xi in &pos {
            let pairs: Vec<(Root, Root)> = pos
                .iter()
                .filter_map(|&a| sys.sub(xi, a).filter(|b| sys.is_positive(*b) && order[&a] < order[b]).map(|b| (a, b)))
                .collect();
            if let Some(&(a, b)) = pairs.iter().min_by_key(|(a, _)| order[a]) {
                let s = raw.get(a, b) * scale[a] * scale[b];
                scale[xi] = s;
                scale[sys.neg(xi)] = s;
            }
        }
        raw.rescaled(sys, &scale)
    }

    /// `N'_{a,b} = N_{a,b} c_a c_b c_{a+b}`.
    pub fn rescaled(&self, sys: &RootSystem, c: &[i8]) -> Self {
        let values =
            self.values.iter().map(|(&(a, b), &n)| ((a, b), n * c[a] * c[b] * c[sys.add(a, b).unwrap()])).collect();
        ConstantTable { source: self.source, values }
    }

    pub fn get(&self, a: Root, b: Root) -> i8 {
        self.values[&(a, b)]
    }

    pub fn try_get(&self, a: Root, b: Root) -> Option<i8> {
        self.values.get(&(a, b)).copied()
    }

    pub fn set(&mut self, a: Root, b: Root, v: i8) {
        self.values.insert((a, b), v);
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Root, Root), i8)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }

    /// Checks the four-way sign identities on every summable pair and the cocycle
    /// identity on every triple with pairwise sums and total sum roots.
    pub fn verify(&self, sys: &RootSystem) -> Vec<Violation> {
        let mut out = Vec::new();
        for a in 0..sys.len() {
            for b in 0..sys.len() {
                let Some(s) = sys.add(a, b) else { continue };
                let Some(n) = self.try_get(a, b) else {
                    out.push(Violation::Missing(a, b));
                    continue;
                };
                let g = sys.neg(s);
                if self.try_get(b, a) != Some(-n) {
                    out.push(Violation::Antisymmetry(a, b));
                }
                if self.try_get(sys.neg(a), sys.neg(b)) != Some(-n) {
                    out.push(Violation::Negation(a, b));
                }
                if self.try_get(b, g) != Some(n) || self.try_get(g, a) != Some(n) {
                    out.push(Violation::Cyclic(a, b));
                }
            }
        }
        for (a, b, c) in cocycle_triples(sys) {
            let lhs = self.get(b, c) * self.get(a, sys.add(b, c).unwrap());
            let rhs = self.get(sys.add(a, b).unwrap(), c) * self.get(a, b);
            if lhs != rhs {
                out.push(Violation::Cocycle(a, b, c));
            }
        }
        out
    }

    /// Sign vector `c` (with `c_{-r} = c_r`) turning `self` into `other`, if any.
    pub fn rescaling_to(&self, other: &Self, sys: &RootSystem) -> Option<Vec<i8>> {
        let pos: Vec<Root> = sys.positive_roots().collect();
        let var_of = |r: Root| -> usize {
            let p = if sys.is_positive(r) { r } else { sys.neg(r) };
            pos.iter().position(|&x| x == p).unwrap()
        };
        let nv = pos.len();
        let words = nv.div_ceil(64) + 1;
        let rhs_bit = nv;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for ((a, b), n) in self.iter() {
            let m = other.try_get(a, b)?;
            let mut row = vec![0u64; words];
            for r in [a, b, sys.add(a, b).unwrap()] {
                let v = var_of(r);
                row[v / 64] ^= 1 << (v % 64);
            }
            if n != m {
                row[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
            }
            rows.push(row);
        }
        let bit = |row: &Vec<u64>, v: usize| (row[v / 64] >> (v % 64)) & 1 == 1;
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for v in 0..nv {
            let Some(p) = (r0..rows.len()).find(|&i| bit(&rows[i], v)) else { continue };
            rows.swap(r0, p);
            let pr = rows[r0].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r0 && bit(row, v) {
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(v);
            r0 += 1;
        }
        if rows[r0..].iter().any(|row| bit(row, rhs_bit)) {
            return None;
        }
        let mut sol = vec![0u8; nv];
        for (i, &v) in pivots.iter().enumerate() {
            sol[v] = bit(&rows[i], rhs_bit) as u8;
        }
        Some((0..sys.len()).map(|r| if sol[var_of(r)] == 1 { -1 } else { 1 }).collect())
    }

    /// Restriction along an embedding `source root -> self root`.
    pub fn pull_back(&self, source: &RootSystem, embedding: &[Root]) -> Self {
        let mut values = BTreeMap::new();
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.add(a, b).is_some() {
                    values.insert((a, b), self.get(embedding[a], embedding[b]));
                }
            }
        }
        ConstantTable { source: self.source, values }
    }

    /// One line per ordered summable pair.
    pub fn render(&self, sys: &RootSystem) -> String {
        let mut s = String::new();
        for ((a, b), n) in self.iter() {
            let sum = sys.add(a, b).unwrap();
            s.push_str(&format!(
                "N({}, {}) = {:+} -> {}\n",
                sys.format_root(a),
                sys.format_root(b),
                n,
                sys.format_root(sum)
            ));
        }
        s
    }
}

/// Triples `(a, b, c)` with `a+b`, `b+c` and `a+b+c` roots: ordered bases of A3 subsystems.
pub fn cocycle_triples(sys: &RootSystem) -> Vec<(Root, Root, Root)> {
    let mut out = Vec::new();
    for a in 0..sys.len() {
        for b in 0..sys.len() {
            let Some(ab) = sys.add(a, b) else { continue };
            for c in 0..sys.len() {
                if sys.add(b, c).is_some() && sys.add(ab, c).is_some() && sys.pairing(a, c) == 0 {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn int_mat(rep: &MatrixRep, letters: &[(Root, i64)]) -> Vec<Vec<i64>> {
    let n = rep.dim;
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(r, a) in letters {
        let old = m.clone();
        for &(row, col, s) in &rep.patterns[r] {
            for i in 0..n {
                m[i][col] += old[i][row] * a * s as i64;
            }
        }
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= 1;
    }
    m
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}
