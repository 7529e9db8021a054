//! Weak, strong and deletion backdoor set detection.
//!
//! Every detector returns a backdoor of minimum size (or
//! [`Error::NoneWithin`]). Ties are broken towards the lexicographically
//! least sorted variable list, so specialized detectors and the brute-force
//! detector can be compared set for set where they share the tie-break.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Assignment, CnfFormula, Var};
use crate::islands::{find_renaming, is_member, solve, BaseClass, ClassId};

mod bruteforce;
mod deletion;
mod schaefer;
mod searchtree;

pub use bruteforce::{bruteforce_cost, detect_bruteforce, DEFAULT_BUDGET};
pub use deletion::{
    deletion_pairs, detect_deletion_clu, detect_deletion_forest, detect_deletion_rhorn, obstruction_graph,
    DeletionPair,
};
pub use crate::islands::{enumerate_obstructions, Obstruction};
pub use schaefer::detect_strong_schaefer;
pub use searchtree::{detect_strong_searchtree, detect_weak_searchtree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackdoorKind {
    Weak,
    Strong,
    Deletion,
}

impl fmt::Display for BackdoorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackdoorKind::Weak => "weak",
            BackdoorKind::Strong => "strong",
            BackdoorKind::Deletion => "deletion",
        })
    }
}

impl FromStr for BackdoorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weak" => Ok(BackdoorKind::Weak),
            "strong" => Ok(BackdoorKind::Strong),
            "deletion" => Ok(BackdoorKind::Deletion),
            _ => Err(Error::InvalidParameters(format!("unknown backdoor kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackdoorQuery {
    pub kind: BackdoorKind,
    pub class: BaseClass,
    pub k: usize,
    /// Upper bound on the enumeration work of the brute-force detector.
    pub budget: u128,
}

impl BackdoorQuery {
    pub fn new(kind: BackdoorKind, class: BaseClass, k: usize) -> BackdoorQuery {
        BackdoorQuery { kind, class, k, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u128) -> BackdoorQuery {
        self.budget = budget;
        self
    }

    /// Deletion backdoors only make sense for clause-induced classes.
    pub fn validate(&self) -> Result<()> {
        if self.kind == BackdoorKind::Deletion && !self.class.clause_induced() {
            return Err(Error::Unsupported(format!(
                "deletion backdoor sets are undefined for {}, which is not clause-induced",
                self.class
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum Certificate {
    None,
    /// An assignment to the backdoor whose reduct is in the class and
    /// satisfiable.
    Witness(Assignment),
    /// A renaming `X` with `r_X(F - B) ∈ Horn`.
    Renaming(BTreeSet<Var>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    BruteForce,
    WeakSearchTree,
    StrongSearchTree,
    StrongVertexCover,
    StrongHittingSet,
    StrongValidity,
    DeletionCluObstructions,
    DeletionForestCycles,
    DeletionRHornVertexCover,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute-force",
            Algorithm::WeakSearchTree => "weak-search-tree",
            Algorithm::StrongSearchTree => "strong-search-tree",
            Algorithm::StrongVertexCover => "strong-vertex-cover",
            Algorithm::StrongHittingSet => "strong-hitting-set",
            Algorithm::StrongValidity => "strong-validity",
            Algorithm::DeletionCluObstructions => "deletion-clu-obstructions",
            Algorithm::DeletionForestCycles => "deletion-forest-cycles",
            Algorithm::DeletionRHornVertexCover => "deletion-rhorn-vertex-cover",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BackdoorResult {
    pub variables: BTreeSet<Var>,
    pub certificate: Certificate,
    pub algorithm: Algorithm,
}

impl BackdoorResult {
    pub fn size(&self) -> usize {
        self.variables.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason", content = "value")]
pub enum Rejection {
    /// A strong backdoor fails on this assignment.
    ReductOutside(Assignment),
    /// No assignment gives a satisfiable reduct inside the class.
    NoWitness,
    /// `F - B` is not in the class.
    DeletionOutside,
    /// The backdoor kind is not defined for the class.
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verification {
    Accept(Certificate),
    Reject(Rejection),
}

impl Verification {
    pub fn accepted(&self) -> bool {
        matches!(self, Verification::Accept(_))
    }
}

/// In-class satisfiability of a reduct that is known to be in `class`.
pub(crate) fn in_class_sat(class: BaseClass, f: &CnfFormula) -> bool {
    solve(class, f).map(|r| r.is_sat()).unwrap_or(false)
}

/// The first assignment to `b` (in binary counting order) witnessing a weak
/// backdoor.
pub(crate) fn weak_witness(f: &CnfFormula, b: &BTreeSet<Var>, class: BaseClass) -> Option<Assignment> {
    Assignment::all_over(b).find(|tau| {
        let g = f.reduce(tau);
        is_member(class, &g) && in_class_sat(class, &g)
    })
}

/// The first assignment to `b` whose reduct leaves the class.
pub(crate) fn strong_counterexample(f: &CnfFormula, b: &BTreeSet<Var>, class: BaseClass) -> Option<Assignment> {
    Assignment::all_over(b).find(|tau| !is_member(class, &f.reduce(tau)))
}

pub fn verify_backdoor(f: &CnfFormula, b: &BTreeSet<Var>, kind: BackdoorKind, class: BaseClass) -> Verification {
    match kind {
        BackdoorKind::Weak => match weak_witness(f, b, class) {
            Some(tau) => Verification::Accept(Certificate::Witness(tau)),
            None => Verification::Reject(Rejection::NoWitness),
        },
        BackdoorKind::Strong => match strong_counterexample(f, b, class) {
            Some(tau) => Verification::Reject(Rejection::ReductOutside(tau)),
            None => Verification::Accept(Certificate::None),
        },
        BackdoorKind::Deletion => {
            if !class.clause_induced() {
                return Verification::Reject(Rejection::Undefined);
            }
            let g = f.delete_vars(b);
            if !is_member(class, &g) {
                return Verification::Reject(Rejection::DeletionOutside);
            }
            if class.id == ClassId::RHorn {
                let x = find_renaming(&g).expect("member of RHorn");
                Verification::Accept(Certificate::Renaming(x))
            } else {
                Verification::Accept(Certificate::None)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// The specialized algorithm when one exists, brute force otherwise.
    #[default]
    Auto,
    BruteForce,
    /// Fail with [`Error::Unsupported`] if no specialized algorithm applies.
    Specialized,
}

/// Whether a specialized (non brute-force) detector exists for the query.
pub fn has_specialized(kind: BackdoorKind, class: BaseClass) -> bool {
    if class.empty_clause_detection {
        return false;
    }
    match kind {
        BackdoorKind::Weak => class.id.is_schaefer() || class.id == ClassId::Clu,
        BackdoorKind::Strong => class.id.is_schaefer() || class.id == ClassId::Clu,
        BackdoorKind::Deletion => {
            class.id.is_schaefer() || matches!(class.id, ClassId::Clu | ClassId::Forest | ClassId::RHorn)
        }
    }
}

fn detect_specialized(f: &CnfFormula, q: &BackdoorQuery) -> Result<BackdoorResult> {
    let (kind, class, k) = (q.kind, q.class, q.k);
    match kind {
        BackdoorKind::Weak => detect_weak_searchtree(f, class, k),
        BackdoorKind::Strong if class.id.is_schaefer() => detect_strong_schaefer(f, class.id, k),
        BackdoorKind::Strong => detect_strong_searchtree(f, class, k),
        BackdoorKind::Deletion => match class.id {
            ClassId::Clu => detect_deletion_clu(f, k),
            ClassId::Forest => detect_deletion_forest(f, k),
            ClassId::RHorn => detect_deletion_rhorn(f, k),
            // strong and deletion backdoors coincide for these classes
            id => detect_strong_schaefer(f, id, k),
        },
    }
}

/// Finds a minimum backdoor of size at most `query.k`.
pub fn detect(f: &CnfFormula, query: &BackdoorQuery, strategy: Strategy) -> Result<BackdoorResult> {
    query.validate()?;
    let specialized = has_specialized(query.kind, query.class);
    match strategy {
        Strategy::BruteForce => detect_bruteforce(f, query),
        Strategy::Specialized if !specialized => Err(Error::Unsupported(format!(
            "no specialized {} detector for {}",
            query.kind, query.class
        ))),
        _ if specialized => detect_specialized(f, query),
        _ => detect_bruteforce(f, query),
    }
}
