//! Criteria 1 to 4: structure constants, representations, semisimple elements, symbols.

use crate::support::{ensure, ok, ring, system, Outcome, Vars};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stk::constants::ConstantTable;
use stk::oracle::enumerate::DEFAULT_COSET_LIMIT;
use stk::oracle::EnumHandle;
use stk::ring::{FElem, RingElem, Scalar};
use stk::rootsys::RootSystem;
use stk::word::{derived, instantiate_relations, DegreeWindow, Word};

/// Sign identities among the constants of one root pair, and the cocycle identity on
/// every ordered triple spanning an `A_3`, read directly off the table.
fn check_table(sys: &RootSystem, t: &ConstantTable) -> Result<(usize, usize), String> {
    let n = sys.len();
    let (mut pairs, mut triples) = (0, 0);
    for a in 0..n {
        for b in 0..n {
            let Some(s) = sys.add(a, b) else { continue };
            let g = sys.neg(s);
            let v = t.get(a, b);
            ensure!(v == 1 || v == -1, "N({a},{b}) = {v}");
            ensure!(
                v == -t.get(b, a) && v == -t.get(sys.neg(a), sys.neg(b)) && v == t.get(b, g) && v == t.get(g, a),
                "sign identities fail at ({}, {})",
                sys.format_root(a),
                sys.format_root(b)
            );
            pairs += 1;
            for c in 0..n {
                let (Some(bc), Some(abc)) = (sys.add(b, c), sys.add(s, c)) else { continue };
                let _ = abc;
                ensure!(
                    t.get(b, c) * t.get(a, bc) == t.get(s, c) * t.get(a, b),
                    "cocycle identity fails at ({a}, {b}, {c})"
                );
                triples += 1;
            }
        }
    }
    Ok((pairs, triples))
}

pub fn constants() -> Outcome {
    let mut out = Vec::new();
    for name in ["A4", "D5", "E6"] {
        let sys = ok(RootSystem::parse_name(name))?;
        let mut tables = vec![("extraspecial", ConstantTable::extraspecial(&sys))];
        if let Ok(rep) = stk::oracle::MatrixRep::build(std::sync::Arc::new(sys.clone())) {
            tables.push(("representation", ConstantTable::from_representation(&rep)));
        }
        for (src, t) in &tables {
            let (p, tr) = check_table(&sys, t)?;
            ensure!(t.verify(&sys).is_empty(), "{name} {src}: library verifier disagrees");
            out.push(format!("{name}/{src}: {p} pairs, {tr} triples"));
        }
    }
    Ok(out.join("; "))
}

fn random_symbolic(vars: &Vars, rng: &mut ChaCha8Rng) -> RingElem {
    let pick = ["a", "b", "m", "n"][rng.gen_range(0..4)];
    let c = vars.int(rng.gen_range(-2..=2));
    let e = rng.gen_range(-1..=1);
    vars.v(pick).mul(&vars.x(e)).add(&c)
}

pub fn representation() -> Outcome {
    let mut checked = 0;
    for name in ["A3", "D4"] {
        let s = system(name);
        let src = stk::word::relations::GenericSource::standard();
        let win = DegreeWindow { min: -1, max: 1, drop_superfluous: false };
        let rels = ok(instantiate_relations(&s.sys, &s.table, &src, win))?;
        let one = RingElem::int(&src.ctx, 1);
        let pairs: std::collections::BTreeSet<(usize, usize)> = rels.iter().map(|r| r.roots).collect();
        for r in &rels {
            ensure!(s.same(&r.lhs, &r.rhs, &one), "{name}: {} fails on {:?}", r.kind, r.roots);
        }
        let n = s.sys.len();
        let distinct = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != s.sys.neg(b)).count();
        ensure!(pairs.len() == distinct, "{name}: {} root pairs covered, expected {distinct}", pairs.len());
        checked += rels.len();
    }
    let vars = Vars::new(&["a", "b"], &["m", "n"], &[], true);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut forms = 0;
    for name in ["D4", "D5"] {
        let s = system(name);
        let one = vars.int(1);
        for _ in 0..100 {
            let w = Word {
                letters: (0..8).map(|_| (rng.gen_range(0..s.sys.len()), random_symbolic(&vars, &mut rng))).collect(),
            };
            ensure!(s.rep.preserves_form(&s.img(&w, &one), &one), "{name}: form not preserved by {w:?}");
            forms += 1;
        }
    }
    Ok(format!("{checked} relation instances, {forms} random words preserve the form"))
}

pub fn semisimple() -> Outcome {
    let vars = Vars::new(&["b"], &[], &["t", "u"], false);
    let (t, u, b) = (vars.v("t"), vars.v("u"), vars.v("b"));
    let one = vars.int(1);
    let mut checked = 0;
    for name in ["A3", "D4"] {
        let s = system(name);
        let sys = &s.sys;
        for al in 0..sys.len() {
            let ha = ok(derived::h(sys, al, &t))?;
            let inv = ok(derived::h(sys, sys.neg(al), &t))?;
            ensure!(s.same(&ha.inv(), &inv, &one), "{name}: h inverse at {}", sys.format_root(al));
            for be in 0..sys.len() {
                let k = sys.pairing(be, al) as i64;
                let tk = ok(t.pow(k))?;
                let lhs = Word::lconj(&ha, &Word::gen(be, b.clone()));
                ensure!(s.same(&lhs, &Word::gen(be, tk.mul(&b)), &one), "{name}: conj h x at ({al}, {be})");
                let lhs = Word::lconj(&ha, &ok(derived::h(sys, be, &u))?);
                let rhs = ok(derived::h(sys, be, &tk.mul(&u)))?.mul(&ok(derived::h(sys, be, &tk))?.inv());
                ensure!(s.same(&lhs, &rhs, &one), "{name}: conj h h at ({al}, {be})");
                checked += 2;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} identities"))
}

type Named<S> = (&'static str, Word<S>, Word<S>);

/// Symbol identities for one choice of units, as word pairs.
fn symbol_pairs<S: Scalar>(sys: &RootSystem, al: usize, s: &S, t: &S, u: &S) -> Result<Vec<Named<S>>, String> {
    let sym = |x: &S, y: &S| ok(derived::sym(sys, al, x, y));
    let ds = |x: &S, y: &S| ok(derived::ds(sys, al, x, y));
    let one = s.one();
    let mut out = vec![
        ("{s,t} = <-s,(1-t)/s>", sym(s, t)?, ds(&s.neg(), &ok(one.sub(t).div(s))?)?),
        ("{u,st} = {u,s}{u,t}", sym(u, &s.mul(t))?, sym(u, s)?.mul(&sym(u, t)?)),
        ("{u,v} = {v,u}^-1", sym(u, s)?, sym(s, u)?.inv()),
        ("{u,v}^-1 = {u^-1,v}", sym(u, s)?.inv(), sym(&ok(u.inv())?, s)?),
        ("{u,v}^-1 = {u,v^-1}", sym(u, s)?.inv(), sym(u, &ok(s.inv())?)?),
    ];
    // <a,b> = {-a, 1+ab} with a = s and b chosen so that 1 + ab = t
    let b = ok(t.sub(&one).div(s))?;
    out.push(("<a,b> = {-a,1+ab}", ds(s, &b)?, sym(&s.neg(), t)?));
    Ok(out)
}

pub fn symbols() -> Outcome {
    let s2 = system("A2");
    let sys = &s2.sys;
    // expansions map to the identity matrix
    let vars = Vars::new(&["a", "b"], &[], &["s", "t", "u"], false);
    let one = vars.int(1);
    for al in 0..sys.len() {
        let st = ok(derived::sym(sys, al, &vars.v("s"), &vars.v("t")))?;
        ensure!(s2.img(&st, &one).is_identity(), "{{s,t}} image at {al}");
        let ab = ok(derived::ds(sys, al, &vars.v("a"), &vars.v("b")))?;
        ensure!(s2.img(&ab, &one).is_identity(), "<a,b> image at {al}");
    }
    // the same identities at matrix level with symbolic units
    let (s, t, u) = (vars.v("s"), vars.v("t"), vars.v("u"));
    let mut matrix_checks = 0;
    for al in 0..sys.len() {
        for (what, l, r) in symbol_pairs(sys, al, &s, &t, &u)? {
            ensure!(s2.same(&l, &r, &one), "matrix level: {what} at {al}");
            matrix_checks += 1;
        }
    }
    // exact Steinberg-level checks by coset enumeration
    let h2 = ok(EnumHandle::enumerate(sys, &s2.table, ring("F2"), DEFAULT_COSET_LIMIT))?;
    ensure!(h2.order() == 168, "St(A2, F2) has order {}", h2.order());
    let f3 = ring("F3");
    let h3 = ok(EnumHandle::enumerate(sys, &s2.table, f3, DEFAULT_COSET_LIMIT))?;
    ensure!(h3.order() == 5616, "St(A2, F3) has order {}", h3.order());
    let units: Vec<FElem> = f3.elements().into_iter().filter(|x| x.is_unit()).collect();
    let mut enum_checks = 0;
    for al in 0..sys.len() {
        for s in &units {
            for t in &units {
                for u in &units {
                    for (what, l, r) in symbol_pairs(sys, al, s, t, u)? {
                        ensure!(h3.equal(&l, &r), "enumeration: {what} at {al} with s={s:?} t={t:?} u={u:?}");
                        enum_checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("orders 168 and 5616; {matrix_checks} matrix and {enum_checks} enumeration checks"))
}
