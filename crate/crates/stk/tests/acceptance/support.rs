use std::sync::Arc;
use stk::constants::ConstantTable;
use stk::oracle::{Matrix, MatrixRep};
use stk::ring::{FiniteRing, RingCtx, RingElem, Scalar};
use stk::rootsys::RootSystem;
use stk::word::Word;

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}
pub(crate) use ensure;

/// Turns any displayable error into the criterion's failure text.
pub fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub struct Sys {
    pub sys: Arc<RootSystem>,
    pub rep: MatrixRep,
    pub table: ConstantTable,
}

pub fn system(name: &str) -> Sys {
    let sys = Arc::new(RootSystem::parse_name(name).unwrap());
    let rep = MatrixRep::build(sys.clone()).unwrap();
    let table = ConstantTable::from_representation(&rep);
    Sys { sys, rep, table }
}

impl Sys {
    pub fn img<S: Scalar>(&self, w: &Word<S>, proto: &S) -> Matrix<S> {
        self.rep.eval(w, proto)
    }

    pub fn same<S: Scalar>(&self, l: &Word<S>, r: &Word<S>, proto: &S) -> bool {
        self.img(l, proto) == self.img(r, proto)
    }

    pub fn root(&self, s: &str) -> usize {
        self.sys.parse_root(s).unwrap()
    }
}

/// Symbolic variables by name.
pub struct Vars(pub Arc<RingCtx>);

impl Vars {
    pub fn new(a: &[&str], m: &[&str], units: &[&str], laurent: bool) -> Self {
        Vars(RingCtx::new(a, m, units, laurent).unwrap())
    }

    pub fn v(&self, n: &str) -> RingElem {
        RingElem::var(&self.0, n).unwrap()
    }

    pub fn x(&self, e: i16) -> RingElem {
        RingElem::x_pow(&self.0, e).unwrap()
    }

    pub fn int(&self, v: i64) -> RingElem {
        RingElem::int(&self.0, v)
    }
}

pub fn ring(name: &str) -> FiniteRing {
    FiniteRing::parse(name).unwrap()
}
