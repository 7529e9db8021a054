use std::collections::BTreeSet;

use super::{clause, Instance, VarAllocator};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, Var};
use crate::islands::ClassId;

/// A hitting set instance: does some set of at most `k` elements meet every
/// member of `sets`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub sets: Vec<BTreeSet<Var>>,
    pub k: usize,
}

impl SetSystem {
    pub fn new(sets: Vec<BTreeSet<Var>>, k: usize) -> Result<SetSystem> {
        if sets.iter().any(BTreeSet::is_empty) {
            return Err(Error::InvalidParameters("set systems need nonempty sets".into()));
        }
        Ok(SetSystem { sets, k })
    }

    pub fn universe(&self) -> BTreeSet<Var> {
        self.sets.iter().flatten().copied().collect()
    }

    pub fn is_hit_by(&self, h: &BTreeSet<Var>) -> bool {
        self.sets.iter().all(|s| !s.is_disjoint(h))
    }
}

fn check_external(x: &[Var]) -> Result<()> {
    let distinct: BTreeSet<&Var> = x.iter().collect();
    if x.is_empty() || distinct.len() != x.len() {
        return Err(Error::InvalidParameters("or-gadgets need one or more distinct external variables".into()));
    }
    Ok(())
}

/// The or-gadget of the weak-hardness reduction for `class`, with fresh
/// internal variables above `max(X)`.
///
/// | class | gadget |
/// |---|---|
/// | 2CNF | `{X ∪ {z1, z2}}` |
/// | Horn, 0-Val | `{X ∪ {z1}}` |
/// | RHorn | `{X ∪ {¬z1, ¬z2}, {z1, ¬z2}, {¬z1, z2}, {z1, z2}}` |
/// | Forest | `{X ∪ {¬z1, ¬z2}, {z1, z2}}` |
/// | Clu | `{X ∪ {z1}, {z1}}` |
///
/// HornMinus and 1-Val use the Horn / 0-Val gadget with every literal
/// negated; their witnesses set the hitting set to 0 instead of 1.
pub fn or_gadget(class: ClassId, x: &[Var]) -> Result<Instance> {
    or_gadget_with(class, x, &mut VarAllocator::above(x))
}

pub fn or_gadget_with(class: ClassId, x: &[Var], alloc: &mut VarAllocator) -> Result<Instance> {
    check_external(x)?;
    let big = |extra: &[crate::formula::Lit], negate: bool| {
        clause(
            x.iter()
                .map(|v| if negate { v.neg() } else { v.pos() })
                .chain(extra.iter().copied()),
        )
    };
    let (clauses, internal) = match class {
        ClassId::TwoCnf => {
            let (z1, z2) = (alloc.fresh(), alloc.fresh());
            (vec![big(&[z1.pos(), z2.pos()], false)], vec![z1, z2])
        }
        ClassId::Horn | ClassId::ZeroVal => {
            let z1 = alloc.fresh();
            (vec![big(&[z1.pos()], false)], vec![z1])
        }
        ClassId::HornMinus | ClassId::OneVal => {
            let z1 = alloc.fresh();
            (vec![big(&[z1.neg()], true)], vec![z1])
        }
        ClassId::RHorn => {
            let (z1, z2) = (alloc.fresh(), alloc.fresh());
            (
                vec![
                    big(&[z1.neg(), z2.neg()], false),
                    clause([z1.pos(), z2.neg()]),
                    clause([z1.neg(), z2.pos()]),
                    clause([z1.pos(), z2.pos()]),
                ],
                vec![z1, z2],
            )
        }
        ClassId::Forest => {
            let (z1, z2) = (alloc.fresh(), alloc.fresh());
            (vec![big(&[z1.neg(), z2.neg()], false), clause([z1.pos(), z2.pos()])], vec![z1, z2])
        }
        ClassId::Clu => {
            let z1 = alloc.fresh();
            (vec![big(&[z1.pos()], false), clause([z1.pos()])], vec![z1])
        }
        other => {
            return Err(Error::Unsupported(format!("no or-gadget for class {}", other.token())));
        }
    };
    Ok(Instance { formula: CnfFormula::from_clauses(clauses), external: x.to_vec(), internal })
}

/// `k + 1` copies of the or-gadget for every set, each with its own
/// internal variables. For `k` at least the minimum hitting set size, the
/// minimum weak backdoor size equals the minimum hitting set size.
pub fn hs_weak_instance(s: &SetSystem, class: ClassId) -> Result<Instance> {
    let universe = s.universe();
    let mut alloc = VarAllocator::above(&universe);
    let mut clauses = Vec::new();
    let mut internal = Vec::new();
    for set in &s.sets {
        let x: Vec<Var> = set.iter().copied().collect();
        for _ in 0..=s.k {
            let g = or_gadget_with(class, &x, &mut alloc)?;
            clauses.extend(g.formula.clauses().iter().cloned());
            internal.extend(g.internal);
        }
    }
    Ok(Instance { formula: CnfFormula::from_clauses(clauses), external: universe.into_iter().collect(), internal })
}

/// The 3CNF gadget for weak RHorn hardness: the complete formula on
/// `z1, z_{s+1}` with `{z1, ¬z_{s+1}}` subdivided through the externals,
///
/// ```text
/// {z_i, ¬x_i, ¬z_{i+1}} (1 ≤ i ≤ s), {¬z1, z_{s+1}}, {¬z1, ¬z_{s+1}}, {z1, z_{s+1}}
/// ```
pub fn rhorn_weak_gadget(x: &[Var]) -> Result<Instance> {
    check_external(x)?;
    let mut alloc = VarAllocator::above(x);
    let z: Vec<Var> = (0..=x.len()).map(|_| alloc.fresh()).collect();
    let s = x.len();
    let mut clauses: Vec<_> = (0..s).map(|i| clause([z[i].pos(), x[i].neg(), z[i + 1].neg()])).collect();
    clauses.push(clause([z[0].neg(), z[s].pos()]));
    clauses.push(clause([z[0].neg(), z[s].neg()]));
    clauses.push(clause([z[0].pos(), z[s].pos()]));
    Ok(Instance { formula: CnfFormula::from_clauses(clauses), external: x.to_vec(), internal: z })
}

/// Strong RHorn hardness: for each set `S_i`, `k + 1` gadgets
/// `S_i ∪ {z1, z2}`, `{z1, ¬z2}`, `{¬z1, z2}`, `¬V ∪ {¬z1, ¬z2}` where `V`
/// is the union of all sets.
pub fn strong_rhorn_instance(s: &SetSystem) -> Result<Instance> {
    let universe = s.universe();
    let mut alloc = VarAllocator::above(&universe);
    let mut clauses = Vec::new();
    let mut internal = Vec::new();
    for set in &s.sets {
        for _ in 0..=s.k {
            let (z1, z2) = (alloc.fresh(), alloc.fresh());
            clauses.push(clause(set.iter().map(|v| v.pos()).chain([z1.pos(), z2.pos()])));
            clauses.push(clause([z1.pos(), z2.neg()]));
            clauses.push(clause([z1.neg(), z2.pos()]));
            clauses.push(clause(universe.iter().map(|v| v.neg()).chain([z1.neg(), z2.neg()])));
            internal.extend([z1, z2]);
        }
    }
    Ok(Instance { formula: CnfFormula::from_clauses(clauses), external: universe.into_iter().collect(), internal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;
    use crate::islands::{find_renaming, is_member, BaseClass};

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    #[test]
    fn paper_gadgets() {
        assert_eq!(or_gadget(ClassId::Horn, &[v(1), v(2)]).unwrap().formula, cnf![[1, 2, 3]]);
        assert_eq!(or_gadget(ClassId::Clu, &[v(1)]).unwrap().formula, cnf![[1, 2], [2]]);
        assert_eq!(or_gadget(ClassId::Forest, &[v(1)]).unwrap().formula, cnf![[1, -2, -3], [2, 3]]);
        assert!(matches!(or_gadget(ClassId::UP, &[v(1)]), Err(Error::Unsupported(_))));
        assert!(or_gadget(ClassId::Horn, &[]).is_err());
    }

    #[test]
    fn rhorn_gadget_with_one_external() {
        let g = rhorn_weak_gadget(&[v(1)]).unwrap();
        // z1 = 2, z2 = 3
        assert_eq!(g.formula, cnf![[2, -1, -3], [-2, 3], [-2, -3], [2, 3]]);
        let rhorn = BaseClass::plain(ClassId::RHorn);
        assert!(!is_member(rhorn, &g.formula));
        assert!(find_renaming(&g.formula.assign(v(1), false)).is_some());
    }

    #[test]
    fn or_gadget_rhorn_is_not_renamable() {
        let g = or_gadget(ClassId::RHorn, &[v(1)]).unwrap();
        assert!(!is_member(BaseClass::plain(ClassId::RHorn), &g.formula));
    }

    #[test]
    fn hs_instance_copies() {
        let s = SetSystem::new(vec![BTreeSet::from([v(1)])], 0).unwrap();
        let inst = hs_weak_instance(&s, ClassId::Horn).unwrap();
        assert_eq!(inst.formula, cnf![[1, 2]]);
        let s = SetSystem::new(vec![BTreeSet::from([v(1)]), BTreeSet::from([v(2)])], 1).unwrap();
        assert_eq!(hs_weak_instance(&s, ClassId::Horn).unwrap().formula.len(), 4);
    }

    #[test]
    fn strong_rhorn_shape() {
        let s = SetSystem::new(vec![BTreeSet::from([v(1)])], 0).unwrap();
        let inst = strong_rhorn_instance(&s).unwrap();
        assert_eq!(inst.formula, cnf![[1, 2, 3], [2, -3], [-2, 3], [-1, -2, -3]]);
    }
}
