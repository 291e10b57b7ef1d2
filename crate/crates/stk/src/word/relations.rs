//! Homogeneous Steinberg relations of bounded degree.

use super::Word;
use crate::constants::ConstantTable;
use crate::ring::{FiniteRing, LocalPair, RingCtx, RingElem, RingError, Scalar, VarKind, XPoly};
use crate::rootsys::{AngleClass, Root, RootSystem};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    R1 { d: i32 },
    R2 { d: i32, e: i32 },
    R3Angle { d: i32, e: i32 },
    R3Perp { d: i32, e: i32 },
}

impl RelationKind {
    /// Largest degree of a generator appearing in the relation.
    pub fn degree(self) -> i32 {
        match self {
            RelationKind::R1 { d } => d,
            RelationKind::R2 { d, e } => d.max(e).max(d + e),
            RelationKind::R3Angle { d, e } | RelationKind::R3Perp { d, e } => d.max(e),
        }
    }

    /// Orthogonal commutation relations derivable from lower-degree ones.
    pub fn is_superfluous(self) -> bool {
        matches!(self, RelationKind::R3Perp { d, e } if d.max(0) + e.max(0) > 1)
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationKind::R1 { d } => write!(f, "R1_{d}"),
            RelationKind::R2 { d, e } => write!(f, "R2_{{{d},{e}}}"),
            RelationKind::R3Angle { d, e } => write!(f, "R3angle_{{{d},{e}}}"),
            RelationKind::R3Perp { d, e } => write!(f, "R3perp_{{{d},{e}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationInstance<S> {
    pub kind: RelationKind,
    pub roots: (Root, Root),
    pub lhs: Word<S>,
    pub rhs: Word<S>,
}

impl<S: Scalar> RelationInstance<S> {
    pub fn degree(&self) -> i32 {
        self.kind.degree()
    }

    /// `lhs * rhs^-1`.
    pub fn relator(&self) -> Word<S> {
        self.lhs.mul(&self.rhs.inv())
    }
}

pub fn relation_degree<S: Scalar>(r: &RelationInstance<S>) -> i32 {
    r.degree()
}

/// Supplies elements of the graded piece `B_d`; `slot` distinguishes independent coefficients.
pub trait GradedSource<S> {
    fn elements(&self, d: i32, slot: usize) -> Result<Vec<S>, RingError>;
}

/// One generic element per piece: `a_slot * t^d` for `d >= 0`, `m_slot * t^d` for `d < 0`.
pub struct GenericSource {
    pub ctx: Arc<RingCtx>,
}

impl GenericSource {
    /// Context with `a, b` in `A`, `m, n` in `M` and a Laurent variable.
    pub fn standard() -> Self {
        GenericSource { ctx: RingCtx::new(&["a", "b"], &["m", "n"], &[], true).expect("fixed names") }
    }

    pub fn slot_var(&self, kind: VarKind, slot: usize) -> Result<RingElem, RingError> {
        let idx = (0..self.ctx.nvars())
            .filter(|&i| self.ctx.kinds()[i] == kind)
            .nth(slot)
            .ok_or_else(|| RingError::UnknownVariable(format!("{kind:?} slot {slot}")))?;
        RingElem::var(&self.ctx, &self.ctx.names()[idx])
    }
}

impl GradedSource<RingElem> for GenericSource {
    fn elements(&self, d: i32, slot: usize) -> Result<Vec<RingElem>, RingError> {
        let kind = if d >= 0 { VarKind::A } else { VarKind::M };
        let v = self.slot_var(kind, slot)?;
        Ok(vec![v.mul(&RingElem::x_pow(&self.ctx, -d as i16)?)])
    }
}

/// Every nonzero element of `B_d` over a finite ring.
pub struct FiniteSource {
    pub ring: FiniteRing,
}

impl GradedSource<XPoly> for FiniteSource {
    fn elements(&self, d: i32, _slot: usize) -> Result<Vec<XPoly>, RingError> {
        Ok(self
            .ring
            .elements()
            .into_iter()
            .filter(|c| !Scalar::is_zero(c) && (d >= 0 || c.is_maximal()))
            .map(|c| XPoly::monomial(c, -d))
            .collect())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DegreeWindow {
    pub min: i32,
    pub max: i32,
    pub drop_superfluous: bool,
}

impl DegreeWindow {
    pub fn up_to(n: i32) -> Self {
        DegreeWindow { min: -n, max: n, drop_superfluous: false }
    }
}

/// All relation instances whose generators have degrees in `[min, max]` and whose
/// relation degree is at most `max`.
pub fn instantiate_relations<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    src: &impl GradedSource<S>,
    win: DegreeWindow,
) -> Result<Vec<RelationInstance<S>>, RingError> {
    let mut out = Vec::new();
    let degrees: Vec<i32> = (win.min..=win.max).collect();
    for al in 0..sys.len() {
        for &d in &degrees {
            let xs = src.elements(d, 0)?;
            let ys = src.elements(d, 1)?;
            for a in &xs {
                for b in &ys {
                    out.push(RelationInstance {
                        kind: RelationKind::R1 { d },
                        roots: (al, al),
                        lhs: Word::gen(al, a.clone()).mul(&Word::gen(al, b.clone())),
                        rhs: Word::gen(al, a.add(b)),
                    });
                }
            }
        }
        for be in 0..sys.len() {
            let class = sys.angle_class(al, be);
            if matches!(class, AngleClass::Equal | AngleClass::Negative) {
                continue;
            }
            for &d in &degrees {
                for &e in &degrees {
                    let kind = match class {
                        AngleClass::SumIsRoot(_) => RelationKind::R2 { d, e },
                        AngleClass::DifferenceIsRoot(_) => RelationKind::R3Angle { d, e },
                        _ => RelationKind::R3Perp { d, e },
                    };
                    if kind.degree() > win.max || (win.drop_superfluous && kind.is_superfluous()) {
                        continue;
                    }
                    let xs = src.elements(d, 0)?;
                    let ys = src.elements(e, 1)?;
                    for a in &xs {
                        for b in &ys {
                            out.extend(relation_instance(sys, table, kind, al, be, a, b));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The instance of `kind` on `(al, be)` with coefficients `a`, `b`; `None` when the
/// angle between the roots does not match the kind.
pub fn relation_instance<S: LocalPair>(
    sys: &RootSystem,
    table: &ConstantTable,
    kind: RelationKind,
    al: Root,
    be: Root,
    a: &S,
    b: &S,
) -> Option<RelationInstance<S>> {
    let comm = || Word::comm(&Word::gen(al, a.clone()), &Word::gen(be, b.clone()));
    let (lhs, rhs) = match (kind, sys.angle_class(al, be)) {
        (RelationKind::R1 { .. }, _) if al == be => {
            (Word::gen(al, a.clone()).mul(&Word::gen(al, b.clone())), Word::gen(al, a.add(b)))
        }
        (RelationKind::R2 { .. }, AngleClass::SumIsRoot(s)) => {
            (comm(), Word::gen(s, a.mul(b).mul(&a.int(table.get(al, be) as i64))))
        }
        (RelationKind::R3Angle { .. }, AngleClass::DifferenceIsRoot(_))
        | (RelationKind::R3Perp { .. }, AngleClass::Orthogonal) => (comm(), Word::empty()),
        _ => return None,
    };
    Some(RelationInstance { kind, roots: (al, be), lhs, rhs })
}
