//! Base classes ("islands of tractability"): recognition, solving and, for
//! clustering and forest formulas, weighted model counting.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Assignment, Clause, CnfFormula, SatResult, Weighting};
use crate::graphkit::{incidence_graph, two_sat};

mod clu;
mod forest;
mod rhorn;
mod subsolver;

pub use clu::{enumerate_obstructions, Obstruction};
pub(crate) use clu::first_obstruction;
pub use rhorn::find_renaming;
pub use subsolver::{subsolver_run, Subsolver, SubsolverOutcome, SubsolverStep, SubsolverTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassId {
    Horn,
    HornMinus,
    TwoCnf,
    ZeroVal,
    OneVal,
    RHorn,
    Forest,
    Clu,
    UP,
    PL,
    UPPL,
}

impl ClassId {
    pub const ALL: [ClassId; 11] = [
        ClassId::Horn,
        ClassId::HornMinus,
        ClassId::TwoCnf,
        ClassId::ZeroVal,
        ClassId::OneVal,
        ClassId::RHorn,
        ClassId::Forest,
        ClassId::Clu,
        ClassId::UP,
        ClassId::PL,
        ClassId::UPPL,
    ];

    pub const SCHAEFER: [ClassId; 5] =
        [ClassId::Horn, ClassId::HornMinus, ClassId::TwoCnf, ClassId::ZeroVal, ClassId::OneVal];

    pub fn token(self) -> &'static str {
        match self {
            ClassId::Horn => "horn",
            ClassId::HornMinus => "horn-minus",
            ClassId::TwoCnf => "2cnf",
            ClassId::ZeroVal => "0val",
            ClassId::OneVal => "1val",
            ClassId::RHorn => "rhorn",
            ClassId::Forest => "forest",
            ClassId::Clu => "clu",
            ClassId::UP => "up",
            ClassId::PL => "pl",
            ClassId::UPPL => "up-pl",
        }
    }

    pub fn is_schaefer(self) -> bool {
        ClassId::SCHAEFER.contains(&self)
    }

    pub fn subsolver(self) -> Option<Subsolver> {
        match self {
            ClassId::UP => Some(Subsolver::Up),
            ClassId::PL => Some(Subsolver::Pl),
            ClassId::UPPL => Some(Subsolver::UpPl),
            _ => None,
        }
    }
}

/// A base class, optionally extended by empty clause detection
/// (`C^{} = C ∪ {F : ∅ ∈ F}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BaseClass {
    pub id: ClassId,
    pub empty_clause_detection: bool,
}

impl BaseClass {
    pub fn plain(id: ClassId) -> BaseClass {
        BaseClass { id, empty_clause_detection: false }
    }

    pub fn with_empty_clause_detection(id: ClassId) -> BaseClass {
        BaseClass { id, empty_clause_detection: true }
    }

    pub fn inner(self) -> BaseClass {
        BaseClass::plain(self.id)
    }

    /// Closed under taking subsets of the clause set.
    pub fn clause_induced(self) -> bool {
        !self.empty_clause_detection && self.id.subsolver().is_none()
    }

    /// Membership is decided clause by clause.
    pub fn clause_defined(self) -> bool {
        !self.empty_clause_detection && self.id.is_schaefer()
    }

    /// Closed under `F ↦ F[τ]`. The pure literal subsolvers are not:
    /// `{{x,y},{x,¬y}}` is decided but its reduct under `x = 0` is not.
    pub fn self_reducible(self) -> bool {
        !matches!(self.id, ClassId::ZeroVal | ClassId::OneVal | ClassId::PL | ClassId::UPPL)
    }

    pub fn disjoint_union_closed(self) -> bool {
        true
    }

    /// Weighted model counting is polynomial.
    pub fn countable(self) -> bool {
        matches!(self.id, ClassId::Clu | ClassId::Forest)
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id.token())?;
        if self.empty_clause_detection {
            f.write_str("+empty")?;
        }
        Ok(())
    }
}

impl FromStr for BaseClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<BaseClass> {
        let (name, wrapped) = match s.strip_suffix("+empty") {
            Some(name) => (name, true),
            None => (s, false),
        };
        let id = ClassId::ALL
            .into_iter()
            .find(|c| c.token().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidParameters(format!("unknown class `{s}`")))?;
        Ok(BaseClass { id, empty_clause_detection: wrapped })
    }
}

/// Whether the single clause `{c}` is in a clause-defined class.
pub(crate) fn clause_in_class(id: ClassId, c: &Clause) -> bool {
    match id {
        ClassId::Horn => c.positive_count() <= 1,
        ClassId::HornMinus => c.negative_count() <= 1,
        ClassId::TwoCnf => c.len() <= 2,
        ClassId::ZeroVal => c.negative_count() >= 1,
        ClassId::OneVal => c.positive_count() >= 1,
        _ => unreachable!("{id:?} is not clause-defined"),
    }
}

pub(crate) fn is_horn(f: &CnfFormula) -> bool {
    f.clauses().iter().all(|c| clause_in_class(ClassId::Horn, c))
}

pub fn is_member(class: BaseClass, f: &CnfFormula) -> bool {
    if class.empty_clause_detection && f.contains_empty_clause() {
        return true;
    }
    match class.id {
        id if id.is_schaefer() => f.clauses().iter().all(|c| clause_in_class(id, c)),
        ClassId::RHorn => find_renaming(f).is_some(),
        ClassId::Forest => incidence_graph(f).is_forest(),
        ClassId::Clu => clu::is_clustering(f),
        id => subsolver_run(id.subsolver().expect("subsolver class"), f).decided(),
    }
}

fn require(class: BaseClass, f: &CnfFormula) -> Result<()> {
    if is_member(class, f) {
        Ok(())
    } else {
        Err(Error::NotInClass { class: class.to_string() })
    }
}

/// Decides a member of `class`. Models are total on `var(F)`.
pub fn solve(class: BaseClass, f: &CnfFormula) -> Result<SatResult> {
    require(class, f)?;
    if f.contains_empty_clause() {
        return Ok(SatResult::Unsat);
    }
    let vars = f.vars();
    let result = match class.id {
        ClassId::Horn | ClassId::HornMinus | ClassId::UP | ClassId::PL | ClassId::UPPL => {
            let which = class.id.subsolver().unwrap_or(Subsolver::Up);
            let trace = subsolver_run(which, f);
            match trace.outcome {
                SubsolverOutcome::DecidedUnsat => SatResult::Unsat,
                // a Horn residual without unit clauses has a negative literal
                // in every clause (dually for HornMinus)
                _ => SatResult::Sat(trace.assignment().completed(&vars, class.id == ClassId::HornMinus)),
            }
        }
        ClassId::TwoCnf => two_sat(f)?,
        ClassId::ZeroVal => SatResult::Sat(Assignment::constant(&vars, false)),
        ClassId::OneVal => SatResult::Sat(Assignment::constant(&vars, true)),
        ClassId::RHorn => {
            let x = find_renaming(f).expect("checked membership");
            match solve(BaseClass::plain(ClassId::Horn), &f.rename(&x))? {
                SatResult::Sat(m) => SatResult::Sat(m.flipped(&x)),
                SatResult::Unsat => SatResult::Unsat,
            }
        }
        ClassId::Forest => self_reduce(f, forest::forest_sat),
        ClassId::Clu => self_reduce(f, clu::clu_sat),
    };
    Ok(result)
}

/// Builds a model one variable at a time with a decision procedure for a
/// self-reducible class.
fn self_reduce(f: &CnfFormula, sat: impl Fn(&CnfFormula) -> bool) -> SatResult {
    if !sat(f) {
        return SatResult::Unsat;
    }
    let mut model = Assignment::new();
    let mut current = f.clone();
    for x in f.vars() {
        let zero = current.assign(x, false);
        let value = !sat(&zero);
        current = if value { current.assign(x, true) } else { zero };
        model.insert(x, value);
    }
    SatResult::Sat(model)
}

/// Exact weighted model count over `var(F)`.
pub fn count(class: BaseClass, f: &CnfFormula, w: &Weighting) -> Result<BigRational> {
    if !class.countable() {
        return Err(Error::Unsupported(format!("counting for class {class}")));
    }
    require(class, f)?;
    if f.contains_empty_clause() {
        return Ok(BigRational::zero());
    }
    Ok(match class.id {
        ClassId::Clu => clu::clu_count(f, w),
        _ => forest::forest_count(f, w),
    })
}

/// The variables occurring in an obstruction to membership in `id`, for the
/// classes where such witnesses are small.
pub(crate) fn obstruction_vars(id: ClassId, f: &CnfFormula) -> Option<BTreeSet<crate::formula::Var>> {
    match id {
        id if id.is_schaefer() => f
            .clauses()
            .iter()
            .find(|c| !clause_in_class(id, c))
            .map(|c| c.vars().collect()),
        ClassId::Clu => first_obstruction(f).map(|o| o.vars()),
        _ => None,
    }
}
