//! Simply-laced root systems of types A, D and E with pairings, angle classes,
//! root subsets and subsystem embeddings.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system {0:?}{1}")]
    Unsupported(Family, usize),
    #[error("no root satisfies the requested angle conditions")]
    NoCompanion,
    #[error("`{0}` is not a root of {1}")]
    NotARoot(String, String),
    #[error("cannot parse system name `{0}`")]
    BadName(String),
}

/// Index into [`RootSystem::roots`].
pub type Root = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSubset {
    bits: Vec<bool>,
}

impl RootSubset {
    pub fn empty(n: usize) -> Self {
        RootSubset { bits: vec![false; n] }
    }

    pub fn from_roots(n: usize, roots: impl IntoIterator<Item = Root>) -> Self {
        let mut s = Self::empty(n);
        for r in roots {
            s.bits[r] = true;
        }
        s
    }

    pub fn contains(&self, r: Root) -> bool {
        self.bits[r]
    }

    pub fn insert(&mut self, r: Root) {
        self.bits[r] = true;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Root> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.iter().all(|r| o.contains(r))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SubsetFlags {
    pub closed: bool,
    pub parabolic: bool,
    pub symmetric: bool,
    pub special: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AngleClass {
    Equal,
    Negative,
    SumIsRoot(Root),
    DifferenceIsRoot(Root),
    Orthogonal,
}

/// Acute: `<alpha, beta> = 1`. ObtusePair: `<alpha, beta> = <gamma, beta> = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Companion {
    Acute,
    AcuteHighest,
    ObtusePair(Root),
}

/// Root-to-root injection `source root index -> self root index`.
pub type Embedding = Vec<Root>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Coordinates: e-basis for A and D, simple-root basis for E.
    pub roots: Vec<Vec<i32>>,
    pub simple_roots: Vec<Root>,
    pub positive: Vec<bool>,
    gram: Option<Vec<Vec<i32>>>,
    neg: Vec<Root>,
    index: HashMap<Vec<i32>, Root>,
    pair: Vec<Vec<i8>>,
}

fn cartan_e(rank: usize) -> Vec<Vec<i32>> {
    // Bourbaki numbering: chain 1-3-4-5-..., node 2 attached to 4.
    let mut c = vec![vec![0; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |a: usize, b: usize| {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    };
    link(1, 3);
    link(2, 4);
    for k in 3..rank {
        link(k, k + 1);
    }
    c
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self, RootError> {
        let (mut roots, gram): (Vec<Vec<i32>>, Option<Vec<Vec<i32>>>) = match family {
            Family::A if rank >= 1 => {
                let n = rank + 1;
                let mut rs = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let mut v = vec![0; n];
                            v[i] = 1;
                            v[j] = -1;
                            rs.push(v);
                        }
                    }
                }
                (rs, None)
            }
            Family::D if rank >= 3 => {
                let mut rs = Vec::new();
                for i in 0..rank {
                    for j in i + 1..rank {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0; rank];
                            v[i] = si;
                            v[j] = sj;
                            rs.push(v);
                        }
                    }
                }
                (rs, None)
            }
            Family::E if (6..=8).contains(&rank) => {
                let c = cartan_e(rank);
                (Self::closure_from_simple(&c), Some(c))
            }
            _ => return Err(RootError::Unsupported(family, rank)),
        };
        let is_pos = |v: &Vec<i32>| -> bool {
            match family {
                Family::E => v.iter().all(|&c| c >= 0),
                // First nonzero e-coordinate positive.
                _ => v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0),
            }
        };
        roots.sort_by(|a, b| is_pos(b).cmp(&is_pos(a)).then_with(|| b.cmp(a)));
        let positive: Vec<bool> = roots.iter().map(is_pos).collect();
        let index: HashMap<Vec<i32>, Root> = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let neg: Vec<Root> = roots.iter().map(|v| index[&v.iter().map(|c| -c).collect::<Vec<_>>()]).collect();
        let simple_coords: Vec<Vec<i32>> = match family {
            Family::A | Family::D => {
                let n = roots[0].len();
                let mut s: Vec<Vec<i32>> = (0..rank.min(n - 1))
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                if family == Family::D {
                    let mut v = vec![0; n];
                    v[rank - 2] = 1;
                    v[rank - 1] = 1;
                    s.truncate(rank - 1);
                    s.push(v);
                }
                s
            }
            Family::E => (0..rank)
                .map(|i| {
                    let mut v = vec![0; rank];
                    v[i] = 1;
                    v
                })
                .collect(),
        };
        let simple_roots = simple_coords.iter().map(|v| index[v]).collect();
        let n = roots.len();
        let mut sys = RootSystem { family, rank, roots, simple_roots, positive, gram, neg, index, pair: vec![] };
        let mut pair = vec![vec![0i8; n]; n];
        for (i, row) in pair.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = sys.inner(&sys.roots[i], &sys.roots[j]) as i8;
            }
        }
        sys.pair = pair;
        Ok(sys)
    }

    /// Parses names such as `A2`, `D5`, `E8`.
    pub fn parse_name(name: &str) -> Result<Self, RootError> {
        let bad = || RootError::BadName(name.to_string());
        let mut chars = name.trim().chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::build(family, rank)
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }

    /// Positive roots by repeated addition of simple roots, in simple-root coordinates.
    fn closure_from_simple(c: &[Vec<i32>]) -> Vec<Vec<i32>> {
        let r = c.len();
        let ip =
            |x: &[i32], y: &[i32]| -> i32 { (0..r).map(|i| (0..r).map(|j| x[i] * c[i][j] * y[j]).sum::<i32>()).sum() };
        let mut pos: Vec<Vec<i32>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut k = 0;
        while k < pos.len() {
            let b = pos[k].clone();
            for i in 0..r {
                let mut e = vec![0; r];
                e[i] = 1;
                if ip(&b, &e) == -1 {
                    let mut s = b.clone();
                    s[i] += 1;
                    if !pos.contains(&s) {
                        pos.push(s);
                    }
                }
            }
            k += 1;
        }
        let mut all = pos.clone();
        all.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect()));
        all
    }

    fn inner(&self, x: &[i32], y: &[i32]) -> i32 {
        match &self.gram {
            None => x.iter().zip(y).map(|(a, b)| a * b).sum(),
            Some(c) => {
                let r = c.len();
                (0..r).map(|i| (0..r).map(|j| x[i] * c[i][j] * y[j]).sum::<i32>()).sum()
            }
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn neg(&self, r: Root) -> Root {
        self.neg[r]
    }

    pub fn is_positive(&self, r: Root) -> bool {
        self.positive[r]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.len()).filter(|&r| self.positive[r])
    }

    /// `<beta, alpha>`; symmetric for simply-laced systems.
    pub fn pairing(&self, beta: Root, alpha: Root) -> i32 {
        self.pair[beta][alpha] as i32
    }

    pub fn find(&self, coords: &[i32]) -> Option<Root> {
        self.index.get(coords).copied()
    }

    pub fn add(&self, a: Root, b: Root) -> Option<Root> {
        let v: Vec<i32> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.find(&v)
    }

    pub fn sub(&self, a: Root, b: Root) -> Option<Root> {
        self.add(a, self.neg(b))
    }

    /// Integer combination of roots, if it is a root.
    pub fn combine(&self, terms: &[(i32, Root)]) -> Option<Root> {
        let mut v = vec![0; self.roots[0].len()];
        for (c, r) in terms {
            for (slot, x) in v.iter_mut().zip(&self.roots[*r]) {
                *slot += c * x;
            }
        }
        self.find(&v)
    }

    pub fn angle_class(&self, a: Root, b: Root) -> AngleClass {
        if a == b {
            return AngleClass::Equal;
        }
        if a == self.neg(b) {
            return AngleClass::Negative;
        }
        match self.pairing(a, b) {
            -1 => AngleClass::SumIsRoot(self.add(a, b).expect("simply-laced sum")),
            1 => AngleClass::DifferenceIsRoot(self.sub(a, b).expect("simply-laced difference")),
            _ => AngleClass::Orthogonal,
        }
    }

    /// `(Z_+(alpha), Z_0(alpha))`.
    pub fn z_sets(&self, alpha: Root) -> (RootSubset, RootSubset) {
        let n = self.len();
        let plus = RootSubset::from_roots(n, (0..n).filter(|&b| self.pairing(alpha, b) > 0));
        let zero = RootSubset::from_roots(n, (0..n).filter(|&b| self.pairing(alpha, b) == 0));
        (plus, zero)
    }

    pub fn full(&self) -> RootSubset {
        RootSubset::from_roots(self.len(), 0..self.len())
    }

    pub fn positive_subset(&self) -> RootSubset {
        RootSubset::from_roots(self.len(), self.positive_roots())
    }

    /// Flags and, for parabolic sets, the special part `{a in S : -a not in S}`.
    pub fn classify_subset(&self, s: &RootSubset) -> (SubsetFlags, Option<RootSubset>) {
        let closed = s.iter().all(|a| s.iter().all(|b| self.add(a, b).is_none_or(|c| s.contains(c))));
        let symmetric = s.iter().all(|a| s.contains(self.neg(a)));
        let parabolic = closed && (0..self.len()).all(|a| s.contains(a) || s.contains(self.neg(a)));
        let special = closed && s.iter().all(|a| !s.contains(self.neg(a)));
        let flags = SubsetFlags { closed, parabolic, symmetric, special };
        let part =
            parabolic.then(|| RootSubset::from_roots(self.len(), s.iter().filter(|&a| !s.contains(self.neg(a)))));
        (flags, part)
    }

    /// `U` together with all differences of its elements that are roots.
    pub fn d_operator(&self, u: &RootSubset) -> RootSubset {
        let mut out = u.clone();
        for a in u.iter() {
            for b in u.iter() {
                if let Some(c) = self.sub(a, b) {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// Lowest-index root at the requested angle(s) to `alpha`.
    pub fn acute_companion(&self, alpha: Root, mode: Companion) -> Result<Root, RootError> {
        let ok = |b: Root| match mode {
            Companion::Acute | Companion::AcuteHighest => b != alpha && self.pairing(alpha, b) == 1,
            Companion::ObtusePair(g) => self.pairing(alpha, b) == -1 && self.pairing(g, b) == -1,
        };
        let found = match mode {
            Companion::AcuteHighest => (0..self.len()).rev().find(|&b| ok(b)),
            _ => (0..self.len()).find(|&b| ok(b)),
        };
        found.ok_or(RootError::NoCompanion)
    }

    /// Embeds a system of the target type whose image contains `must_contain`.
    ///
    /// Searches ordered simple systems by backtracking on the Cartan matrix.
    pub fn find_embedding(&self, family: Family, rank: usize, must_contain: &[Root]) -> Option<Embedding> {
        let target = RootSystem::build(family, rank).ok()?;
        if rank > self.rank {
            return None;
        }
        let ts = &target.simple_roots;
        let coords: Vec<Vec<i32>> = (0..target.len()).map(|r| target.simple_coords(r)).collect();
        let mut chosen: Vec<Root> = Vec::new();
        self.embed_search(&target, ts, &coords, must_contain, &mut chosen)
    }

    /// Coordinates of a root in the basis of simple roots.
    pub fn simple_coords(&self, r: Root) -> Vec<i32> {
        if self.family == Family::E {
            return self.roots[r].clone();
        }
        // Small dense solve over Q; the simple roots are linearly independent.
        let simple: Vec<&Vec<i32>> = self.simple_roots.iter().map(|&s| &self.roots[s]).collect();
        let rest = &self.roots[r];
        let mut c = vec![0; self.rank];
        let n = rest.len();
        let m = self.rank;
        let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..m).map(|j| simple[j][i] as f64).collect()).collect();
        let mut b: Vec<f64> = rest.iter().map(|&x| x as f64).collect();
        let mut row = 0;
        let mut piv = vec![usize::MAX; m];
        for col in 0..m {
            let Some(p) = (row..n).find(|&i| a[i][col].abs() > 1e-9) else { continue };
            a.swap(row, p);
            b.swap(row, p);
            for i in 0..n {
                if i != row && a[i][col].abs() > 1e-9 {
                    let f = a[i][col] / a[row][col];
                    let pivot = a[row].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot).take(m) {
                        *x -= f * y;
                    }
                    b[i] -= f * b[row];
                }
            }
            piv[col] = row;
            row += 1;
        }
        for (col, slot) in c.iter_mut().enumerate() {
            let p = piv[col];
            *slot = (b[p] / a[p][col]).round() as i32;
        }
        c
    }

    fn embed_search(
        &self,
        target: &RootSystem,
        ts: &[Root],
        coords: &[Vec<i32>],
        must: &[Root],
        chosen: &mut Vec<Root>,
    ) -> Option<Embedding> {
        let k = chosen.len();
        if k == ts.len() {
            let map: Option<Embedding> = coords
                .iter()
                .map(|c| self.combine(&c.iter().zip(chosen.iter()).map(|(x, r)| (*x, *r)).collect::<Vec<_>>()))
                .collect();
            let map = map?;
            return must.iter().all(|m| map.contains(m)).then_some(map);
        }
        for cand in 0..self.len() {
            if chosen.contains(&cand) {
                continue;
            }
            let ok = (0..k).all(|i| self.pairing(chosen[i], cand) == target.pairing(ts[i], ts[k]));
            if !ok {
                continue;
            }
            chosen.push(cand);
            if let Some(e) = self.embed_search(target, ts, coords, must, chosen) {
                return Some(e);
            }
            chosen.pop();
        }
        None
    }

    /// Parses `[i,-j]`-style e-basis roots (1-based, signed) or `s[c1,...]` simple-root combinations.
    pub fn parse_root(&self, text: &str) -> Result<Root, RootError> {
        let err = || RootError::NotARoot(text.to_string(), self.name());
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = t.strip_prefix("s[").and_then(|r| r.strip_suffix(']')) {
            let cs: Vec<i32> = inner.split(',').map(|x| x.parse().map_err(|_| err())).collect::<Result<_, _>>()?;
            if cs.len() != self.rank {
                return Err(err());
            }
            let terms: Vec<(i32, Root)> = cs.iter().zip(&self.simple_roots).map(|(c, r)| (*c, *r)).collect();
            return self.combine(&terms).ok_or_else(err);
        }
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(err)?;
        if self.family == Family::E {
            return Err(err());
        }
        let mut v = vec![0; self.roots[0].len()];
        for part in inner.split(',') {
            let k: i32 = part.parse().map_err(|_| err())?;
            let idx = k.unsigned_abs() as usize;
            if idx == 0 || idx > v.len() {
                return Err(err());
            }
            v[idx - 1] += k.signum();
        }
        self.find(&v).ok_or_else(err)
    }

    /// Inverse of [`RootSystem::parse_root`].
    pub fn format_root(&self, r: Root) -> String {
        let v = &self.roots[r];
        if self.family == Family::E {
            let cs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            return format!("s[{}]", cs.join(","));
        }
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| if *c > 0 { format!("{}", i + 1) } else { format!("-{}", i + 1) })
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, r: usize) -> RootSystem {
        RootSystem::build(f, r).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(sys(Family::A, 2).len(), 6);
        assert_eq!(sys(Family::D, 4).len(), 24);
        for (r, n) in [(6, 72), (7, 126), (8, 240)] {
            assert_eq!(sys(Family::E, r).len(), n);
        }
        assert!(RootSystem::build(Family::D, 2).is_err());
    }

    #[test]
    fn pairing_examples() {
        let a2 = sys(Family::A, 2);
        let (a1, a2s) = (a2.simple_roots[0], a2.simple_roots[1]);
        assert_eq!(a2.pairing(a1, a2s), -1);
        assert_eq!(a2.pairing(a1, a1), 2);
        let d4 = sys(Family::D, 4);
        let x = d4.parse_root("[1,-2]").unwrap();
        let y = d4.parse_root("[1,2]").unwrap();
        assert_eq!(d4.pairing(x, y), 0);
    }

    #[test]
    fn angle_class_examples() {
        let d4 = sys(Family::D, 4);
        let r = |s| d4.parse_root(s).unwrap();
        assert_eq!(d4.angle_class(r("[1,-2]"), r("[2,-3]")), AngleClass::SumIsRoot(r("[1,-3]")));
        assert_eq!(d4.angle_class(r("[1,-2]"), r("[3,-4]")), AngleClass::Orthogonal);
        assert_eq!(d4.angle_class(r("[1,-2]"), r("[1,-3]")), AngleClass::DifferenceIsRoot(r("[3,-2]")));
    }

    #[test]
    fn acute_companion_examples() {
        let a2 = sys(Family::A, 2);
        let a1 = a2.simple_roots[0];
        let expect = a2.add(a2.simple_roots[0], a2.simple_roots[1]).unwrap();
        assert_eq!(a2.acute_companion(a1, Companion::Acute).unwrap(), expect);
        let a1sys = sys(Family::A, 1);
        assert_eq!(a1sys.acute_companion(0, Companion::Acute), Err(RootError::NoCompanion));
        let d4 = sys(Family::D, 4);
        let (al, ga) = (d4.parse_root("[1,-2]").unwrap(), d4.parse_root("[3,-4]").unwrap());
        let b = d4.acute_companion(al, Companion::ObtusePair(ga)).unwrap();
        assert_eq!((d4.pairing(al, b), d4.pairing(ga, b)), (-1, -1));
    }

    #[test]
    fn subset_classification() {
        let a2 = sys(Family::A, 2);
        let (f, part) = a2.classify_subset(&a2.positive_subset());
        assert!(f.closed && f.parabolic && f.special);
        assert_eq!(part.unwrap(), a2.positive_subset());
        let (f, part) = a2.classify_subset(&a2.full());
        assert!(f.closed && f.parabolic && f.symmetric);
        assert!(part.unwrap().is_empty());
        let a1 = a2.simple_roots[0];
        let (f, _) = a2.classify_subset(&RootSubset::from_roots(6, [a1, a2.neg(a1)]));
        assert!(f.symmetric && f.closed && !f.parabolic);
    }

    #[test]
    fn d_operator_examples() {
        let a2 = sys(Family::A, 2);
        let (s1, s2) = (a2.simple_roots[0], a2.simple_roots[1]);
        let single = RootSubset::from_roots(6, [s1]);
        assert_eq!(a2.d_operator(&single), single);
        let hi = a2.add(s1, s2).unwrap();
        let got = a2.d_operator(&RootSubset::from_roots(6, [s1, hi]));
        assert_eq!(got, RootSubset::from_roots(6, [s1, hi, s2, a2.neg(s2)]));
    }

    #[test]
    fn embeddings() {
        let d5 = sys(Family::D, 5);
        let must = [d5.parse_root("[1,-2]").unwrap(), d5.parse_root("[2,-3]").unwrap()];
        let e = d5.find_embedding(Family::A, 4, &must).unwrap();
        let a4 = sys(Family::A, 4);
        for i in 0..a4.len() {
            for j in 0..a4.len() {
                assert_eq!(d5.pairing(e[i], e[j]), a4.pairing(i, j));
            }
        }
        let d4 = sys(Family::D, 4);
        let must = [d4.parse_root("[3,-4]").unwrap(), d4.parse_root("[3,4]").unwrap()];
        assert!(d4.find_embedding(Family::A, 4, &must).is_none());
        let a4e = a4.find_embedding(Family::A, 4, &[a4.simple_roots[0]]).unwrap();
        assert_eq!(a4e.len(), a4.len());
    }

    #[test]
    fn root_syntax_round_trip() {
        for s in [sys(Family::A, 3), sys(Family::D, 4), sys(Family::E, 6)] {
            for r in 0..s.len() {
                assert_eq!(s.parse_root(&s.format_root(r)).unwrap(), r);
            }
        }
        let a3 = sys(Family::A, 3);
        assert!(a3.parse_root("[1,5]").is_err());
    }

    #[test]
    fn simple_coordinates_reconstruct_roots() {
        for s in [sys(Family::A, 4), sys(Family::D, 5)] {
            for r in 0..s.len() {
                let c = s.simple_coords(r);
                let terms: Vec<(i32, Root)> = c.iter().zip(&s.simple_roots).map(|(x, y)| (*x, *y)).collect();
                assert_eq!(s.combine(&terms), Some(r));
            }
        }
    }
}
