//! Unit propagation and pure literal elimination without branching.

use crate::formula::{Assignment, CnfFormula, Lit, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsolver {
    /// Unit propagation only.
    Up,
    /// Pure literal elimination only.
    Pl,
    /// Both; unit propagation takes precedence when both apply.
    UpPl,
}

impl Subsolver {
    fn unit_propagation(self) -> bool {
        matches!(self, Subsolver::Up | Subsolver::UpPl)
    }

    fn pure_literals(self) -> bool {
        matches!(self, Subsolver::Pl | Subsolver::UpPl)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsolverStep {
    /// A unit clause `{ℓ}` was propagated, i.e. `ℓ` set true.
    UnitPropagation(Lit),
    /// The pure literal `ℓ` was set true.
    PureLiteral(Lit),
}

impl SubsolverStep {
    pub fn lit(self) -> Lit {
        match self {
            SubsolverStep::UnitPropagation(l) | SubsolverStep::PureLiteral(l) => l,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsolverOutcome {
    DecidedSat,
    DecidedUnsat,
    GiveUp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsolverTrace {
    pub steps: Vec<SubsolverStep>,
    pub outcome: SubsolverOutcome,
    /// The formula left when the run stopped.
    pub residual: CnfFormula,
}

impl SubsolverTrace {
    /// The partial assignment made by the applied steps.
    pub fn assignment(&self) -> Assignment {
        self.steps
            .iter()
            .map(|s| (s.lit().var(), s.lit().polarity()))
            .collect()
    }

    pub fn decided(&self) -> bool {
        self.outcome != SubsolverOutcome::GiveUp
    }
}

/// Applies the permitted simplifications to a fixpoint.
///
/// Steps are chosen deterministically: unit clauses before pure literals,
/// lowest variable first. Since both operations are confluent, the outcome
/// does not depend on this order.
pub fn subsolver_run(which: Subsolver, f: &CnfFormula) -> SubsolverTrace {
    let mut current = f.clone();
    let mut steps = Vec::new();
    loop {
        if current.contains_empty_clause() {
            return SubsolverTrace { steps, outcome: SubsolverOutcome::DecidedUnsat, residual: current };
        }
        if current.is_empty() {
            return SubsolverTrace { steps, outcome: SubsolverOutcome::DecidedSat, residual: current };
        }
        let step = which
            .unit_propagation()
            .then(|| lowest_unit(&current).map(SubsolverStep::UnitPropagation))
            .flatten()
            .or_else(|| {
                which
                    .pure_literals()
                    .then(|| lowest_pure(&current).map(SubsolverStep::PureLiteral))
                    .flatten()
            });
        let Some(step) = step else {
            return SubsolverTrace { steps, outcome: SubsolverOutcome::GiveUp, residual: current };
        };
        let lit = step.lit();
        current = current.assign(lit.var(), lit.polarity());
        steps.push(step);
    }
}

fn lowest_unit(f: &CnfFormula) -> Option<Lit> {
    f.clauses()
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c.lits()[0])
        .min()
}

fn lowest_pure(f: &CnfFormula) -> Option<Lit> {
    use std::collections::BTreeMap;
    // bit 0: occurs negatively, bit 1: occurs positively
    let mut seen: BTreeMap<Var, u8> = BTreeMap::new();
    for c in f.clauses() {
        for l in c.lits() {
            *seen.entry(l.var()).or_default() |= 1 << l.polarity() as u8;
        }
    }
    seen.into_iter().find_map(|(v, mask)| match mask {
        0b01 => Some(v.neg()),
        0b10 => Some(v.pos()),
        _ => None,
    })
}
