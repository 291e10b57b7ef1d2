//! Criteria 5 to 8: relative elements, the graded presentation, `P_alpha` cosets and `S_alpha`.

use crate::support::{ensure, ok, ring, system, Outcome, Sys, Vars};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use stk::oracle::{self, good_sample, specialize, Strategy, Verdict};
use stk::relgrp::{
    classify_k, conj_p0_decompose, crels_decompose, default_delta, kab_split, p_functional, product_word,
    superfluous_chain, zrels_decompose, Element, GenClass, P0Case,
};
use stk::ring::{FiniteRing, LocalPair, RingElem, Scalar, XPoly};
use stk::rootsys::{AngleClass, Companion, Root, RootSystem};
use stk::torsor::{jet, Torsor};
use stk::word::degree::word_degree;
use stk::word::relations::relation_instance;
use stk::word::{Reducer, RelationKind, Word};

pub fn z_and_c() -> Outcome {
    let mut report = Vec::new();
    for name in ["D4", "A3"] {
        let s = system(name);
        let vars = Vars::new(&["a", "b"], &["m", "n"], &[], false);
        let (sv, tv, xi, eta) = (vars.v("m"), vars.v("n"), vars.v("a"), vars.v("b"));
        let one = vars.int(1);
        let mut per_id: BTreeMap<String, usize> = BTreeMap::new();
        let n = s.sys.len();
        for al in 0..n {
            for be in 0..n {
                for part in 1..=5u8 {
                    if let Ok(id) = zrels_decompose(&s.sys, &s.table, part, al, be, &sv, &xi, &eta) {
                        ensure!(s.same(&id.lhs, &id.rhs, &one), "{name} {} at ({al}, {be})", id.id);
                        *per_id.entry(id.id).or_default() += 1;
                    }
                }
                for part in 1..=4u8 {
                    if let Ok(id) = crels_decompose(&s.sys, &s.table, part, al, be, &sv, &tv, &xi) {
                        ensure!(s.same(&id.lhs, &id.rhs, &one), "{name} {} at ({al}, {be})", id.id);
                        *per_id.entry(id.id).or_default() += 1;
                    }
                }
            }
        }
        ensure!(per_id.len() == 9, "{name}: only {:?} have configurations", per_id.keys().collect::<Vec<_>>());
        let total: usize = per_id.values().sum();
        report.push(format!("{name}: {total} identities over 9 parts"));
    }
    Ok(report.join("; "))
}

fn orthogonal_pairs(sys: &RootSystem) -> Vec<(Root, Root)> {
    let n = sys.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |g| (a, g)))
        .filter(|&(a, g)| a != g && sys.pairing(a, g) == 0 && sys.add(a, g).is_none())
        .collect()
}

/// Coefficient of degree `d` in `t = X^-1`, in `A` for `d >= 0` and in `M` below.
fn graded_coeff(vars: &Vars, a: &str, m: &str, d: i32) -> RingElem {
    let c = if d >= 0 { vars.v(a) } else { vars.v(m) };
    c.mul(&vars.x(-d as i16))
}

fn random_graded_word(s: &Sys, vars: &Vars, rng: &mut ChaCha8Rng, len: usize, max_d: i32) -> Word<RingElem> {
    let names = [("a", "m"), ("b", "n")];
    Word {
        letters: (0..len)
            .map(|_| {
                let (a, m) = names[rng.gen_range(0..2)];
                (rng.gen_range(0..s.sys.len()), graded_coeff(vars, a, m, rng.gen_range(-1..=max_d)))
            })
            .collect(),
    }
}

pub fn graded() -> Outcome {
    // derivation chains, step by step, in both regimes
    let s = system("D4");
    let vars = Vars::new(&["a", "b"], &["m", "n"], &[], true);
    let (a, b) = (vars.v("a"), vars.v("b"));
    let one = vars.int(1);
    let mut cited: BTreeMap<String, RelationKind> = BTreeMap::new();
    let mut steps = 0;
    let pairs = orthogonal_pairs(&s.sys);
    for &(al, ga) in &pairs {
        for (d, e) in [(1, 1), (1, 2), (2, 2), (2, 3), (0, 1), (-1, 1), (0, 2), (-1, 2), (-2, 3)] {
            let ch = ok(superfluous_chain(&s.sys, &s.table, al, ga, d, e, &a, &b))?;
            let imgs: Vec<_> = ch.steps.iter().map(|st| s.img(&st.word, &one)).collect();
            for (i, w) in imgs.windows(2).enumerate() {
                ensure!(w[0] == w[1], "chain ({d},{e}) on ({al},{ga}) breaks at step {}", i + 1);
            }
            ensure!(imgs.first() == imgs.last(), "chain endpoints differ");
            steps += imgs.len();
            for k in ch.cited() {
                cited.insert(k.to_string(), k);
            }
        }
    }
    // every cited relation kind holds on all root pairs of matching angle
    let mut instances = 0;
    for k in cited.values() {
        let (d, e) = match *k {
            RelationKind::R1 { d } => (d, d),
            RelationKind::R2 { d, e } | RelationKind::R3Angle { d, e } | RelationKind::R3Perp { d, e } => (d, e),
        };
        let (ca, cb) = (graded_coeff(&vars, "a", "m", d), graded_coeff(&vars, "b", "n", e));
        for al in 0..s.sys.len() {
            for be in 0..s.sys.len() {
                if let Some(rel) = relation_instance(&s.sys, &s.table, *k, al, be, &ca, &cb) {
                    ensure!(s.same(&rel.lhs, &rel.rhs, &one), "cited {k} fails on ({al},{be})");
                    instances += 1;
                }
            }
        }
    }
    // degree reduction and independence of the companion choice, randomized
    let mut reduced = 0;
    let mut differing = 0;
    let target = ring("Z9");
    for name in ["A4", "D5"] {
        let s = system(name);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..12 {
            let w = random_graded_word(&s, &vars, &mut rng, 3, 4);
            let lo = ok(Reducer::new(&s.sys, &s.table).reduce(&w, 1))?;
            let hi = ok(Reducer::new(&s.sys, &s.table).with_mode(Companion::AcuteHighest).reduce(&w, 1))?;
            for r in [&lo, &hi] {
                ensure!(ok(word_degree(r))?.unwrap_or(0) <= 1, "{name}: reduced word has a letter of degree > 1");
                let v = ok(oracle::equal(&s.rep, &w, r, &one, Strategy::Randomized { target, seeds: 32 }, 17))?;
                ensure!(v == Verdict::ProbablyEqual, "{name}: reduction changed the image of {w:?}");
            }
            differing += usize::from(lo != hi);
            reduced += 1;
        }
    }
    ensure!(differing > 0, "the two companion choices never produced different words");
    Ok(format!(
        "{} chains ({steps} steps) over {} orthogonal pairs; {} cited kinds on {instances} instances; {reduced} words reduced with 32 seeds, {differing} with distinct companion choices",
        pairs.len() * 9,
        pairs.len(),
        cited.len()
    ))
}

/// A random factor in the alphabet accepted by the coset functional at `alpha` and `beta`.
fn random_admissible(sys: &RootSystem, r: &FiniteRing, rng: &mut ChaCha8Rng, delta: Option<Root>) -> Element<XPoly> {
    let zero = r.from_int(0);
    let s = XPoly::from_coeffs(zero, 1, vec![r.random_maximal(rng), r.random_maximal(rng)]);
    match (rng.gen_range(0..6), delta) {
        (0, Some(d)) => {
            let f = XPoly::from_coeffs(zero, 0, vec![r.random_maximal(rng), r.random_maximal(rng)]);
            let t = XPoly::from_coeffs(zero, 1, vec![r.random(rng), r.random(rng)]);
            Element::C { root: d, s: f, t }
        }
        (1, _) => Element::X { root: rng.gen_range(0..sys.len()), f: s },
        _ => {
            let xi = XPoly::from_coeffs(zero, 0, vec![r.random(rng), r.random(rng)]);
            Element::Z { root: rng.gen_range(0..sys.len()), s, xi }
        }
    }
}

fn image_p(s: &Sys, alpha: Root, fs: &[Element<XPoly>], one: &XPoly) -> Result<XPoly, String> {
    let w = Word::product(fs.iter().map(|e| e.word(&s.sys)).collect::<Vec<_>>().iter());
    ok(jet::p_value(&s.rep, alpha, &s.img(&w, one)))
}

pub fn p_alpha() -> Outcome {
    // conjugation formulas with per-factor classes, every configuration of D4
    let s = system("D4");
    let vars = Vars::new(&["a", "b"], &["m", "n"], &[], true);
    let x = vars.x(1);
    let (m, f, xi) = (vars.v("m"), vars.v("n").add(&vars.v("m").mul(&x)), vars.v("a").add(&vars.v("b").mul(&x)));
    let one = vars.int(1);
    let mut per_case = BTreeMap::new();
    for case in [P0Case::Eq31, P0Case::Eq32, P0Case::Eq33, P0Case::ZAlpha] {
        for al in 0..s.sys.len() {
            for be in 0..s.sys.len() {
                let Ok((lhs, factors)) = conj_p0_decompose(&s.sys, &s.table, case, al, be, &m, &f, &xi) else {
                    continue;
                };
                let classes: Vec<GenClass> = factors.iter().map(|c| c.class).collect();
                ensure!(classes == stk::relgrp::decomp::expected_classes(case), "{} classes {classes:?}", case.id());
                ensure!(s.same(&lhs, &product_word(&s.sys, &factors), &one), "{} at ({al},{be})", case.id());
                *per_case.entry(case.id()).or_insert(0) += 1;
            }
        }
    }
    ensure!(per_case.len() == 4, "cases without a configuration: {per_case:?}");
    // functional examples
    let al = s.root("[1,-2]");
    let na = s.sys.neg(al);
    let (m1, m2, m3) = (vars.v("m"), vars.v("n"), vars.v("m").add(&vars.v("n")));
    let zero = vars.int(0);
    let pf = |fs: &[Element<RingElem>]| ok(p_functional(&s.sys, al, fs, &zero));
    let z = |root, s: RingElem, xi: RingElem| Element::Z { root, s, xi };
    ensure!(pf(&[z(na, x.mul(&m1.add(&m2.mul(&x))), vars.v("a"))])? == m1, "single factor example");
    ensure!(pf(&[z(s.root("[1,-3]"), x.mul(&m1), vars.v("a"))])?.is_zero(), "factor on another root");
    let de = s.root("[3,4]");
    let mixed = [
        z(na, x.mul(&m1), vars.v("a")),
        Element::C { root: de, s: m2.clone(), t: x.mul(&vars.v("b")) },
        z(na, x.mul(&m3), vars.v("b")),
    ];
    ensure!(pf(&mixed)? == m1.add(&m3), "sum of constant terms");
    // additivity, agreement with the image, and the K(alpha, beta) split on D5 over Z/9
    let s5 = system("D5");
    let r = ring("Z9");
    let one5 = XPoly::constant(r.from_int(1));
    let zero5 = one5.zero();
    let (al, be) = (s5.root("[1,-2]"), s5.root("[1,-3]"));
    let delta = (0..s5.sys.len()).find(|&d| s5.sys.pairing(d, al) == 0 && s5.sys.pairing(d, be) == 0);
    ensure!(delta.is_some(), "no root orthogonal to both");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let len = 3 + i % 4;
        let fs: Vec<_> = (0..len).map(|_| random_admissible(&s5.sys, &r, &mut rng, delta)).collect();
        let (h1, h2) = fs.split_at(len / 2);
        let (p, p1, p2) = (
            ok(p_functional(&s5.sys, al, &fs, &zero5))?,
            ok(p_functional(&s5.sys, al, h1, &zero5))?,
            ok(p_functional(&s5.sys, al, h2, &zero5))?,
        );
        ensure!(p == p1.add(&p2), "additivity fails on {fs:?}");
        ensure!(p == image_p(&s5, al, &fs, &one5)?, "functional disagrees with the image on {fs:?}");
        let (g0, m, m2) = ok(kab_split(&s5.sys, al, be, &fs, &zero5))?;
        for root in [al, be] {
            ensure!(ok(p_functional(&s5.sys, root, &g0, &zero5))?.is_zero(), "residual functional at {root}");
            ensure!(image_p(&s5, root, &g0, &one5)?.is_zero(), "residual image value at {root}");
        }
        let mut back = g0.clone();
        for (root, v) in [(s5.sys.neg(al), &m), (s5.sys.neg(be), &m2)] {
            back.push(Element::X { root, f: v.mul(&one5.x_monomial(1).unwrap()) });
        }
        ensure!(image_p(&s5, al, &back, &one5)? == m, "split does not recombine");
    }
    Ok(format!("conjugation configurations {per_case:?}; 3 functional examples; 100 random splits"))
}

/// Equality and coset checks, exact over the symbolic ring or sampled over Z/9.
enum Check<'a> {
    Exact,
    Sampled { target: &'a FiniteRing, seeds: u64 },
}

impl Check<'_> {
    fn equal(&self, tor: &Torsor<RingElem>, l: &Word<RingElem>, r: &Word<RingElem>) -> Result<bool, String> {
        match self {
            Check::Exact => Ok(tor.rep.eval(l, &tor.proto) == tor.rep.eval(r, &tor.proto)),
            Check::Sampled { target, seeds } => {
                let st = Strategy::Randomized { target: *(*target), seeds: *seeds as u32 };
                Ok(ok(oracle::equal(&tor.rep, l, r, &tor.proto, st, 5))? != Verdict::Refuted)
            }
        }
    }

    fn in_coset(&self, tor: &Torsor<RingElem>, root: Root, w: &Word<RingElem>, m: &RingElem) -> Result<bool, String> {
        match self {
            Check::Exact => ok(jet::in_coset(&tor.rep, root, &tor.rep.eval(w, &tor.proto), m)),
            Check::Sampled { target, seeds } => {
                for seed in 0..*seeds {
                    let asg = ok(good_sample(tor.proto.ctx(), *(*target), seed, &[w]))?;
                    let (ws, ms) = (ok(specialize(w, &asg))?, ok(asg.eval_keep_x(m))?);
                    let one = ok(asg.eval_keep_x(&tor.proto))?;
                    if !ok(jet::in_coset(&tor.rep, root, &tor.rep.eval(&ws, &one), &ms))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

fn acute_pair(sys: &RootSystem) -> (Root, Root) {
    let n = sys.len();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| a != b && sys.pairing(a, b) == 1).unwrap()
}

/// `S_alpha` identities and coset memberships on one system.
fn s_alpha_on(name: &str, check: Check) -> Result<usize, String> {
    let vars = Vars::new(&["a", "b", "c"], &["m", "n", "k"], &[], true);
    let s = system(name);
    let tor = ok(Torsor::new(s.sys.clone(), vars.int(1)))?;
    let sys = &tor.sys;
    let (a, b, c) = (vars.v("a"), vars.v("b"), vars.v("c"));
    let (m, m2, k) = (vars.v("m"), vars.v("n"), vars.v("k"));
    let x = vars.x(1);
    let (al, be) = acute_pair(sys);
    let (na, nb) = (sys.neg(al), sys.neg(be));
    let n = std::cell::Cell::new(0);
    let eq = |l: &Word<RingElem>, r: &Word<RingElem>, what: &str| -> Result<(), String> {
        ensure!(check.equal(&tor, l, r)?, "{name}: {what}");
        n.set(n.get() + 1);
        Ok(())
    };
    // an element of P_alpha(0): generators of types P1, P3 and P5
    let p1_root = (0..sys.len()).find(|&g| matches!(sys.angle_class(al, g), AngleClass::SumIsRoot(_))).unwrap();
    let p3_root = (0..sys.len()).find(|&g| sys.pairing(al, g) == 0 && sys.add(al, g).is_none() && g != al).unwrap();
    let g_zero = Word::product([
        &stk::word::z(sys, p1_root, &x.mul(&k), &c),
        &stk::word::z(sys, p3_root, &k, &b.add(&x)),
        &Word::gen(al, k.add(&k.mul(&x))),
    ]);
    let g1 = g_zero.mul(&Word::gen(na, m.mul(&x)));
    let g2 = Word::gen(na, m2.mul(&x)).mul(&stk::word::z(sys, p1_root, &x.mul(&m2), &a));
    // the premises themselves
    ensure!(check.in_coset(&tor, al, &g1, &m)?, "{name}: premise g1 in P_alpha(m)");
    ensure!(check.in_coset(&tor, al, &g2, &m2)?, "{name}: premise g2 in P_alpha(m')");
    // multiplicativity
    let (l, r) = ok(tor.s_map_product(al, &a, &g1, &m, &g2, &m2))?;
    eq(&l, &r, "S(a, g1 g2) = S(a, g1) S(a/(1+am), g2)")?;
    // closed form on root elements and the displayed chain
    let (l, r) = ok(tor.s_map_root_element(al, &a, &m))?;
    eq(&l, &r, "closed form of S(a, x_{-alpha}(mX))")?;
    let chain = ok(tor.root_element_chain(al, &a, &m))?;
    for (i, w) in chain.windows(2).enumerate() {
        eq(&w[0], &w[1], &format!("root element chain step {}", i + 1))?;
    }
    // the coset after S_alpha
    let (w, target) = ok(tor.additive_element(al, &a, &g1, &m))?;
    ensure!(check.in_coset(&tor, al, &w, &target)?, "{name}: S(a, g) h^-1(1+am) not in P_alpha(m/(1+am))");
    // g = g0 x_{-alpha}(mX) x_{-beta}(m'X) with g0 in K(alpha, beta)
    let de = ok(default_delta(sys, al, be))?;
    let outside = (0..sys.len())
        .find(|&g| {
            let e = Element::Z { root: g, s: x.mul(&k), xi: c.clone() };
            matches!(classify_k(sys, al, be, de, &e), Ok(GenClass::K1))
        })
        .unwrap();
    let g0 = stk::word::z(sys, outside, &x.mul(&k), &c);
    let g = Word::product([&g0, &Word::gen(na, m.mul(&x)), &Word::gen(nb, m2.mul(&x))]);
    ensure!(
        check.in_coset(&tor, al, &g, &m)? && check.in_coset(&tor, be, &g, &m2)?,
        "{name}: premise g in P_alpha(m) and P_beta(m')"
    );
    let (w, target) = ok(tor.sharp_element(al, be, &a, &g, &m, &m2))?;
    ensure!(check.in_coset(&tor, be, &w, &target)?, "{name}: sharp element outside P_beta(m'/(1+am))");
    let g = Word::product([&g0, &Word::gen(nb, m2.mul(&x)), &Word::gen(na, m.mul(&x))]);
    let (w, target) = ok(tor.obtuse_element(al, be, &a, &b, &g, &m, &m2))?;
    ensure!(check.in_coset(&tor, al, &w, &target)?, "{name}: obtuse element outside P_alpha((m - e b m')/(1+am))");
    let chain = ok(tor.obtuse_chain(al, be, &a, &b, &m, &m2))?;
    for (i, w) in chain.windows(2).enumerate() {
        eq(&w[0], &w[1], &format!("obtuse chain step {}", i + 1))?;
    }
    // premises and the three coset memberships
    Ok(n.get() + 7)
}

pub fn s_alpha() -> Outcome {
    let exact = s_alpha_on("D4", Check::Exact)?;
    let z9 = ring("Z9");
    let sampled = s_alpha_on("D5", Check::Sampled { target: &z9, seeds: 32 })?;
    Ok(format!("{exact} exact checks over D4, {sampled} sampled checks over D5 (32 points each)"))
}
