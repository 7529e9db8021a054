//! Using a known backdoor: deciding satisfiability, weighted model counting,
//! and backdoor trees.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::detect::{verify_backdoor, BackdoorKind, Verification};
use crate::error::{Error, Result};
use crate::formula::{Assignment, CnfFormula, SatResult, Var, Weighting};
use crate::islands::{count, is_member, solve, BaseClass};

mod tree;

pub use tree::{
    min_leaf_tree, min_leaf_tree_over, sat_via_tree, validate_tree, BackdoorTree, TreeSearch, TreeVerdict,
    DEFAULT_TREE_BUDGET,
};

/// Result of evaluating a possibly weak backdoor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakOutcome {
    Sat(Assignment),
    /// No assignment of the backdoor produced a satisfiable in-class
    /// reduct. This says nothing about `F` itself.
    NotWitnessed,
}

fn require_strong(f: &CnfFormula, b: &BTreeSet<Var>, class: BaseClass) -> Result<()> {
    match verify_backdoor(f, b, BackdoorKind::Strong, class) {
        Verification::Accept(_) => Ok(()),
        Verification::Reject(r) => Err(Error::InvalidBackdoor {
            kind: BackdoorKind::Strong.to_string(),
            reason: format!("{r:?}"),
        }),
    }
}

/// Extends `tau` by a model of the reduct and fixes the remaining variables
/// of `f` to false.
fn lift(f: &CnfFormula, tau: &Assignment, model: &Assignment) -> Assignment {
    tau.extended(model).completed(&f.vars(), false)
}

/// Decides `F` by solving `F[τ]` in the class for every `τ ∈ 2^B`.
pub fn sat_via_strong(f: &CnfFormula, b: &BTreeSet<Var>, class: BaseClass) -> Result<SatResult> {
    require_strong(f, b, class)?;
    for tau in Assignment::all_over(b) {
        if let SatResult::Sat(m) = solve(class, &f.reduce(&tau))? {
            return Ok(SatResult::Sat(lift(f, &tau, &m)));
        }
    }
    Ok(SatResult::Unsat)
}

/// Looks for `τ ∈ 2^B` with `F[τ]` in the class and satisfiable.
pub fn sat_via_weak(f: &CnfFormula, b: &BTreeSet<Var>, class: BaseClass) -> WeakOutcome {
    for tau in Assignment::all_over(b) {
        let g = f.reduce(&tau);
        if !is_member(class, &g) {
            continue;
        }
        if let Ok(SatResult::Sat(m)) = solve(class, &g) {
            return WeakOutcome::Sat(lift(f, &tau, &m));
        }
    }
    WeakOutcome::NotWitnessed
}

/// `#_w(F) = Σ_{τ ∈ 2^B} w(τ) · #_w(F[τ])` with the reducts counted in a
/// countable class (Clu or Forest).
pub fn count_via_strong(f: &CnfFormula, b: &BTreeSet<Var>, class: BaseClass, w: &Weighting) -> Result<BigRational> {
    if !class.countable() {
        return Err(Error::Unsupported(format!("weighted counting is not available for {class}")));
    }
    require_strong(f, b, class)?;
    let taus: Vec<Assignment> = Assignment::all_over(b).collect();
    let terms: Vec<BigRational> = taus
        .par_iter()
        .map(|tau| {
            let weight = tau.iter().fold(BigRational::from_integer(1.into()), |acc, (v, value)| {
                acc * w.lit_weight(v.lit(value))
            });
            if weight.is_zero() {
                return Ok(weight);
            }
            Ok(weight * count(class, &f.reduce(tau), w)?)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().fold(BigRational::zero(), |a, b| a + b))
}
