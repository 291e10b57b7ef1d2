//! Suite files (`stk-suite/1`) and their reports.

use super::{parse_ring, parse_root, parse_word, CliError, Context};
use crate::constants::ConstantTable;
use crate::oracle::enumerate::DEFAULT_COSET_LIMIT;
use crate::oracle::{self, EnumHandle, MatrixRep, Predicate, Strategy};
use crate::relgrp::{self, P0Case};
use crate::ring::{Assignment, FElem, FiniteRing, LocalPair, RingCtx, RingElem, Scalar, XPoly};
use crate::rootsys::{Family, RootSystem};
use crate::torsor::{sample, Torsor, TripleT};
use crate::word::{derived, RelationKind, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use std::time::Instant;

pub const SCHEMA: &str = "stk-suite/1";
pub const REPORT_SCHEMA: &str = "stk-report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemSpec {
    pub family: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(default)]
    pub a_vars: Vec<String>,
    #[serde(default)]
    pub m_vars: Vec<String>,
    #[serde(default)]
    pub unit_vars: Vec<String>,
    #[serde(default = "yes")]
    pub laurent: bool,
    /// Extra denominators; any unit-shaped element may be inverted without listing it.
    #[serde(default)]
    pub denominators: Vec<String>,
    #[serde(default = "base_z")]
    pub base: String,
}

fn yes() -> bool {
    true
}

fn base_z() -> String {
    "Z".into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Matrix,
    Enum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyName {
    Symbolic,
    Randomized,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleSpec {
    pub mode: Mode,
    pub strategy: StrategyName,
    #[serde(default = "default_seeds")]
    pub seeds: u32,
    /// Finite ring for randomized, enumeration and torsor cases, e.g. `Z9`, `F3`, `F3[e]/e^3`.
    #[serde(default)]
    pub target: Option<String>,
}

fn default_seeds() -> u32 {
    8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    Equality,
    Membership,
    Decomposition,
    Torsor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Steinberg,
    Image,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub kind: CaseKind,
    #[serde(default)]
    pub lhs: Option<String>,
    #[serde(default)]
    pub rhs: Option<String>,
    #[serde(default)]
    pub predicate: Option<String>,
    /// Decomposition identifier such as `L4.2.5` or `eq3-1`.
    #[serde(default)]
    pub identity: Option<String>,
    #[serde(default)]
    pub roots: Vec<String>,
    #[serde(default)]
    pub args: Vec<String>,
    /// Torsor check: a relation kind such as `R2_{0,1}`, or `remark`, `factorize`, `equivariance`, `relative`.
    #[serde(default)]
    pub relation: Option<String>,
    #[serde(default)]
    pub samples: Option<u32>,
    pub paper_ref: String,
    pub level: Level,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteFile {
    pub schema: String,
    pub name: String,
    pub system: SystemSpec,
    pub ring: RingSpec,
    pub oracle: OracleSpec,
    pub cases: Vec<Case>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseVerdict {
    Pass,
    Refuted,
    Error,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub verdict: CaseVerdict,
    pub level: Level,
    pub level_achieved: Option<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub details: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub refuted: usize,
    pub error: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub version: String,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl Report {
    pub fn exit(&self) -> super::Exit {
        if self.summary.error > 0 {
            super::Exit::Error
        } else if self.summary.refuted > 0 {
            super::Exit::Refuted
        } else {
            super::Exit::Pass
        }
    }

    /// One JSON object per case, then the summary line.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&serde_json::to_string(c).expect("plain data"));
            out.push('\n');
        }
        let head = serde_json::json!({
            "schema": self.schema, "suite": self.suite, "seed": self.seed,
            "version": self.version, "summary": self.summary,
        });
        out.push_str(&head.to_string());
        out.push('\n');
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let lvl = match c.level_achieved {
                Some(Level::Steinberg) => "steinberg",
                Some(Level::Image) => "image",
                None => "-",
            };
            let v = format!("{:?}", c.verdict).to_uppercase();
            out.push_str(&format!("{v:8} {:32} [{lvl}] {}\n", c.id, c.details));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: {} pass, {} refuted, {} error, {} skipped\n",
            self.suite, s.pass, s.refuted, s.error, s.skipped
        ));
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub seeds: Option<u32>,
    pub timings: bool,
}

pub fn load(path: &std::path::Path) -> Result<SuiteFile, CliError> {
    let text = std::fs::read_to_string(path)?;
    let suite: SuiteFile = serde_json::from_str(&text).map_err(|e| CliError::Schema(e.to_string()))?;
    if suite.schema != SCHEMA {
        return Err(CliError::Schema(format!("expected schema {SCHEMA}, found {}", suite.schema)));
    }
    let mut ids: Vec<&str> = suite.cases.iter().map(|c| c.id.as_str()).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(CliError::Schema(format!("duplicate case id {}", w[0])));
    }
    Ok(suite)
}

pub fn parse_family(name: &str) -> Result<Family, CliError> {
    match name.trim().to_ascii_uppercase().as_str() {
        "A" => Ok(Family::A),
        "D" => Ok(Family::D),
        "E" => Ok(Family::E),
        other => Err(CliError::Schema(format!("unknown family {other}"))),
    }
}

/// `R1_d`, `R2_{d,e}`, `R3angle_{d,e}` or `R3perp_{d,e}`.
pub fn parse_relation_kind(s: &str) -> Option<RelationKind> {
    let (head, rest) = s.trim().split_once('_')?;
    let nums: Vec<i32> =
        rest.trim_matches(|c| c == '{' || c == '}').split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    match (head, nums.as_slice()) {
        ("R1", [d]) => Some(RelationKind::R1 { d: *d }),
        ("R2", [d, e]) => Some(RelationKind::R2 { d: *d, e: *e }),
        ("R3angle", [d, e]) => Some(RelationKind::R3Angle { d: *d, e: *e }),
        ("R3perp", [d, e]) => Some(RelationKind::R3Perp { d: *d, e: *e }),
        _ => None,
    }
}

/// Everything a suite's cases share.
pub struct Runner {
    pub ctx: Context,
    pub rep: Option<MatrixRep>,
    pub table: ConstantTable,
    pub strategy: Strategy,
    pub mode: Mode,
    pub target: Option<FiniteRing>,
    pub enumerated: Option<EnumHandle>,
    pub seed: u64,
    pub seeds: u32,
}

impl Runner {
    pub fn new(suite: &SuiteFile, ov: Overrides) -> Result<Self, CliError> {
        let sys = Arc::new(RootSystem::build(parse_family(&suite.system.family)?, suite.system.rank)?);
        fn refs(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        let r = &suite.ring;
        let mut ring = RingCtx::new(&refs(&r.a_vars), &refs(&r.m_vars), &refs(&r.unit_vars), r.laurent)?;
        if suite.ring.base != "Z" {
            return Err(CliError::Schema(format!("symbolic base ring must be Z, found {}", suite.ring.base)));
        }
        if !suite.ring.denominators.is_empty() {
            let tmp = Context { sys: sys.clone(), ring: ring.clone() };
            let dens = suite
                .ring
                .denominators
                .iter()
                .map(|d| parse_ring(&tmp, d).map_err(|e| CliError::parse(e, d)))
                .collect::<Result<Vec<_>, _>>()?;
            ring = ring.with_denominators(dens)?;
        }
        let ctx = Context { sys: sys.clone(), ring };
        let rep = MatrixRep::build(sys.clone()).ok();
        let table = match &rep {
            Some(r) => ConstantTable::from_representation(r),
            None => ConstantTable::extraspecial(&sys),
        };
        let target = suite.oracle.target.as_deref().map(FiniteRing::parse).transpose()?;
        let seeds = ov.seeds.unwrap_or(suite.oracle.seeds);
        let strategy = match suite.oracle.strategy {
            StrategyName::Symbolic => Strategy::Symbolic,
            StrategyName::Randomized => Strategy::Randomized {
                target: target.ok_or_else(|| CliError::Schema("randomized strategy needs oracle.target".into()))?,
                seeds,
            },
        };
        let enumerated = match suite.oracle.mode {
            Mode::Matrix => None,
            Mode::Enum | Mode::Both => {
                let t = target.ok_or_else(|| CliError::Schema("enumeration needs oracle.target".into()))?;
                Some(EnumHandle::enumerate(&sys, &table, t, DEFAULT_COSET_LIMIT)?)
            }
        };
        Ok(Runner {
            ctx,
            rep,
            table,
            strategy,
            mode: suite.oracle.mode,
            target,
            enumerated,
            seed: ov.seed.unwrap_or_else(|| super::env_seed(0)),
            seeds,
        })
    }

    fn word(&self, src: &Option<String>, what: &str) -> Result<Word<RingElem>, CliError> {
        let s = src.as_deref().ok_or_else(|| CliError::Schema(format!("case needs `{what}`")))?;
        parse_word(&self.ctx, s).map_err(|e| CliError::parse(e, s))
    }

    fn rep(&self) -> Result<&MatrixRep, CliError> {
        self.rep.as_ref().ok_or_else(|| CliError::Oracle(oracle::OracleError::NoRepresentation(self.ctx.sys.name())))
    }

    fn proto(&self) -> RingElem {
        RingElem::int(&self.ctx.ring, 1)
    }

    /// Matrix and/or enumeration equality according to the suite mode.
    pub fn equal(&self, lhs: &Word<RingElem>, rhs: &Word<RingElem>) -> Result<(bool, Level, String), CliError> {
        let mut details = Vec::new();
        let mut ok = true;
        let mut level = Level::Image;
        if matches!(self.mode, Mode::Matrix | Mode::Both) {
            let v = oracle::equal(self.rep()?, lhs, rhs, &self.proto(), self.strategy, self.seed)?;
            ok &= v.holds();
            details.push(format!("matrix: {}", serde_json::to_string(&v).expect("plain enum").trim_matches('"')));
        }
        if let Some(h) = &self.enumerated {
            let target = self.target.expect("enumeration implies a target");
            let mut all = true;
            for i in 0..self.seeds.max(1) {
                let asg = oracle::good_sample(&self.ctx.ring, target, self.seed.wrapping_add(i as u64), &[lhs, rhs])?;
                let l = to_finite(lhs, &asg)?;
                let r = to_finite(rhs, &asg)?;
                all &= h.equal(&l, &r);
            }
            ok &= all;
            if all && self.mode == Mode::Enum && self.ctx.ring.nvars() == usize::from(self.ctx.ring.x_index().is_some())
            {
                level = Level::Steinberg;
            }
            details.push(format!("enumeration over {}: {}", target.name(), if all { "equal" } else { "different" }));
        }
        Ok((ok, level, details.join("; ")))
    }

    pub fn run_case(&self, case: &Case) -> Result<(bool, Level, String), CliError> {
        match case.kind {
            CaseKind::Equality => {
                let (l, r) = (self.word(&case.lhs, "lhs")?, self.word(&case.rhs, "rhs")?);
                self.equal(&l, &r)
            }
            CaseKind::Membership => self.membership(case),
            CaseKind::Decomposition => self.decomposition(case),
            CaseKind::Torsor => self.torsor(case),
        }
    }

    fn membership(&self, case: &Case) -> Result<(bool, Level, String), CliError> {
        let w = self.word(&case.lhs, "lhs")?;
        let pred = case.predicate.as_deref().unwrap_or("identity");
        let m = self.rep()?.eval(&w, &self.proto());
        let ok = match pred {
            "identity" => m.is_identity(),
            "entries_in_b" => m.satisfies(Predicate::EntriesInB),
            "constant_in_x" => m.satisfies(Predicate::ConstantInX),
            "identity_mod_m" => m.satisfies(Predicate::IdentityModM),
            "entries_in_poly" => m.satisfies(Predicate::EntriesInPoly),
            "entries_in_inverse_poly" => m.satisfies(Predicate::EntriesInInversePoly),
            other => return Err(CliError::Schema(format!("unknown predicate {other}"))),
        };
        Ok((ok, Level::Image, format!("predicate {pred}")))
    }

    fn decomposition(&self, case: &Case) -> Result<(bool, Level, String), CliError> {
        let id = case.identity.as_deref().ok_or_else(|| CliError::Schema("decomposition needs `identity`".into()))?;
        let roots = case
            .roots
            .iter()
            .map(|r| parse_root(&self.ctx, r).map_err(|e| CliError::parse(e, r)))
            .collect::<Result<Vec<_>, _>>()?;
        let args = case
            .args
            .iter()
            .map(|a| parse_ring(&self.ctx, a).map_err(|e| CliError::parse(e, a)))
            .collect::<Result<Vec<_>, _>>()?;
        let need = |nr: usize, na: usize| {
            if roots.len() < nr || args.len() < na {
                Err(CliError::Schema(format!("{id} needs {nr} roots and {na} arguments")))
            } else {
                Ok(())
            }
        };
        let sys = &self.ctx.sys;
        if let Some(part) = id.strip_prefix("L4.2.") {
            need(2, 3)?;
            let part = part.parse().map_err(|_| CliError::Schema(format!("bad identity {id}")))?;
            let i = relgrp::zrels_decompose(sys, &self.table, part, roots[0], roots[1], &args[0], &args[1], &args[2])?;
            return self.equal(&i.lhs, &i.rhs);
        }
        if let Some(part) = id.strip_prefix("L4.5.") {
            need(2, 3)?;
            let part = part.parse().map_err(|_| CliError::Schema(format!("bad identity {id}")))?;
            let i = relgrp::crels_decompose(sys, &self.table, part, roots[0], roots[1], &args[0], &args[1], &args[2])?;
            return self.equal(&i.lhs, &i.rhs);
        }
        if id == "L4.8" {
            need(1, 3)?;
            let i = relgrp::kdecomp1_factor(sys, roots[0], &args[0], &args[1], &args[2])?;
            return self.equal(&i.lhs, &i.rhs);
        }
        if let Some(case_id) = P0Case::parse(id) {
            need(2, 3)?;
            let (lhs, factors) =
                relgrp::conj_p0_decompose(sys, &self.table, case_id, roots[0], roots[1], &args[0], &args[1], &args[2])?;
            let rhs = relgrp::product_word(sys, &factors);
            let (ok, level, details) = self.equal(&lhs, &rhs)?;
            let classes: Vec<_> = factors.iter().map(|f| f.class).collect();
            let tags_ok = classes.as_slice() == relgrp::decomp::expected_classes(case_id);
            let tags = classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            return Ok((ok && tags_ok, level, format!("{details}; classes {tags}")));
        }
        Err(CliError::Schema(format!("unknown identity {id}")))
    }

    fn torsor(&self, case: &Case) -> Result<(bool, Level, String), CliError> {
        let ring = self.target.ok_or_else(|| CliError::Schema("torsor cases need oracle.target".into()))?;
        let what = case.relation.as_deref().ok_or_else(|| CliError::Schema("torsor case needs `relation`".into()))?;
        let n = case.samples.unwrap_or(25);
        let tor = Torsor::new(self.ctx.sys.clone(), XPoly::constant(ring.from_int(1)))?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv(&case.id));
        let mut failures = 0u32;
        for _ in 0..n {
            let ok = match what {
                "remark" => {
                    let alpha = rng.gen_range(0..tor.sys.len());
                    let (a, m) =
                        (XPoly::constant(ring.random(&mut rng)), XPoly::constant(ring.random_maximal(&mut rng)));
                    let xm = tor.proto.x_monomial(-1)?;
                    let w = derived::ds(&tor.sys, alpha, &a, &m)?.inv().mul(&derived::ds(
                        &tor.sys,
                        alpha,
                        &a.mul(&xm),
                        &m.mul(&xm.inv()?),
                    )?);
                    let lhs = tor.act(&tor.one(), &w)?;
                    let u = a.mul(&m).add(&a.one());
                    let rhs = tor.from_t(&TripleT { p: Word::empty(), h: Word::empty(), u, p0: Word::empty() })?;
                    tor.equiv(&lhs, &rhs)
                }
                "factorize" => {
                    let w = sample::random_b_word(&tor, &ring, &mut rng, 8, 1);
                    tor.factorize_b(&w)?.certificate.passes()
                }
                "equivariance" => {
                    let t = sample::random_triple(&tor, &ring, &mut rng, 2, 2)?;
                    let w = sample::random_b_word(&tor, &ring, &mut rng, 4, 1);
                    *tor.act(&t, &w)?.g_image() == tor.rep.eval(&w.mul(&t.g), &tor.proto)
                }
                "relative" => {
                    let t = tor.to_t(&sample::random_triple(&tor, &ring, &mut rng, 2, 2)?)?;
                    let root = rng.gen_range(0..tor.sys.len());
                    let s = XPoly::from_coeffs(
                        ring.from_int(0),
                        1,
                        vec![ring.random_maximal(&mut rng), ring.random_maximal(&mut rng)],
                    );
                    let xi =
                        XPoly::from_coeffs(ring.from_int(0), 0, vec![ring.random(&mut rng), ring.random(&mut rng)]);
                    let e = [relgrp::Element::Z { root, s, xi }];
                    let got = tor.from_t(&tor.act_relative(&t, &e)?)?;
                    tor.equiv(&got, &tor.from_t(&tor.relative_target(&t, &e)?)?)
                }
                other => {
                    let kind = parse_relation_kind(other)
                        .ok_or_else(|| CliError::Schema(format!("unknown torsor check {other}")))?;
                    let t = sample::random_triple(&tor, &ring, &mut rng, 2, 2)?;
                    let rel = sample::random_relation(&tor, &ring, &mut rng, kind);
                    tor.relation_holds(&t, &rel)?
                }
            };
            failures += u32::from(!ok);
        }
        Ok((failures == 0, Level::Image, format!("{what}: {} of {n} samples over {}", n - failures, ring.name())))
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn to_finite(w: &Word<RingElem>, asg: &Assignment) -> Result<Word<FElem>, CliError> {
    Ok(w.map_coeffs(|s| asg.eval(s))?)
}

pub fn run(suite: &SuiteFile, ov: Overrides) -> Result<Report, CliError> {
    let runner = Runner::new(suite, ov)?;
    let results = crate::par::map(&suite.cases, |case| {
        let start = Instant::now();
        let out = runner.run_case(case);
        let elapsed = start.elapsed().as_millis() as u64;
        let (verdict, achieved, details) = match out {
            Ok((true, lvl, d)) => (CaseVerdict::Pass, Some(lvl), d),
            Ok((false, lvl, d)) => (CaseVerdict::Refuted, Some(lvl), d),
            Err(e) => (CaseVerdict::Error, None, e.to_string().replace('\n', " ")),
        };
        CaseReport {
            id: case.id.clone(),
            verdict,
            level: case.level,
            level_achieved: achieved,
            elapsed_ms: ov.timings.then_some(elapsed),
            details,
        }
    });
    let mut cases = results;
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let mut summary = Summary::default();
    for c in &cases {
        match c.verdict {
            CaseVerdict::Pass => summary.pass += 1,
            CaseVerdict::Refuted => summary.refuted += 1,
            CaseVerdict::Error => summary.error += 1,
            CaseVerdict::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report {
        schema: REPORT_SCHEMA.into(),
        suite: suite.name.clone(),
        seed: runner.seed,
        version: env!("CARGO_PKG_VERSION").into(),
        cases,
        summary,
    })
}
