use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{clause, VarAllocator};
use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, Lit, Var};
use crate::graphkit::lemma_graph;

/// The two 2CNF formulas derived from the literal graph of `F`.
///
/// In `f2` every literal vertex `v` becomes the variable `v + 1`. Each
/// matching edge gives a negative clause and each co-occurrence edge a
/// positive one. `f2star` replaces every positive clause `{a, b}` by the
/// `2k + 2` clauses `{a, z_i}, {¬z_i, b}` with fresh `z_1..z_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaChain {
    pub f2: CnfFormula,
    pub f2star: CnfFormula,
}

pub fn lemma_2sat_chain(f: &CnfFormula, k: usize) -> LemmaChain {
    let lg = lemma_graph(f);
    let var = |v: usize| Var::new(v as u32 + 1);
    let negative: Vec<Clause> = lg.matching.iter().map(|&(a, b)| clause([var(a).neg(), var(b).neg()])).collect();
    let positive: Vec<(Var, Var)> = lg.cooccurrence_edges().into_iter().map(|(a, b)| (var(a), var(b))).collect();

    let f2 = CnfFormula::from_clauses(
        negative.iter().cloned().chain(positive.iter().map(|&(a, b)| clause([a.pos(), b.pos()]))),
    );
    let mut alloc = VarAllocator::above(&f2.vars());
    let mut mixed = Vec::with_capacity(positive.len() * (2 * k + 2));
    for &(a, b) in &positive {
        for _ in 0..=k {
            let z = alloc.fresh();
            mixed.push(clause([a.pos(), z.pos()]));
            mixed.push(clause([z.neg(), b.pos()]));
        }
    }
    let f2star = CnfFormula::from_clauses(negative.into_iter().chain(mixed));
    LemmaChain { f2, f2star }
}

/// The fewest clauses accepted by `deletable` whose removal makes the 2CNF
/// formula `f` satisfiable, if at most `limit` suffice.
///
/// Branches on the clauses of one contradiction `x ⇝ ¬x ⇝ x` of the
/// implication graph; those clauses alone are unsatisfiable, so one of them
/// has to go.
pub fn min_deletions_to_sat(
    f: &CnfFormula,
    deletable: impl Fn(&Clause) -> bool,
    limit: usize,
) -> Result<Option<usize>> {
    if f.max_width() > 2 {
        return Err(Error::Unsupported("deletion to satisfiability needs a 2CNF formula".into()));
    }
    let mut active = vec![true; f.len()];
    Ok((0..=limit).find(|&b| delete_within(f, &deletable, &mut active, b)))
}

fn delete_within(f: &CnfFormula, deletable: &impl Fn(&Clause) -> bool, active: &mut [bool], budget: usize) -> bool {
    let Some(core) = contradiction(f, active) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for i in core {
        if deletable(&f.clauses()[i]) {
            active[i] = false;
            let ok = delete_within(f, deletable, active, budget - 1);
            active[i] = true;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Indices of clauses forming an unsatisfiable subset, or `None` when the
/// active clauses are satisfiable.
fn contradiction(f: &CnfFormula, active: &[bool]) -> Option<BTreeSet<usize>> {
    let mut edges: HashMap<Lit, Vec<(Lit, usize)>> = HashMap::new();
    for (i, c) in f.clauses().iter().enumerate().filter(|(i, _)| active[*i]) {
        match c.lits() {
            [] => return Some(BTreeSet::from([i])),
            [a] => edges.entry(!*a).or_default().push((*a, i)),
            [a, b] => {
                edges.entry(!*a).or_default().push((*b, i));
                edges.entry(!*b).or_default().push((*a, i));
            }
            _ => unreachable!("2CNF"),
        }
    }
    let path = |from: Lit, to: Lit| -> Option<Vec<usize>> {
        let mut via: HashMap<Lit, (Lit, usize)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(v, i) in edges.get(&u).into_iter().flatten() {
                if v == from || via.contains_key(&v) {
                    continue;
                }
                via.insert(v, (u, i));
                if v == to {
                    let mut used = Vec::new();
                    let mut w = to;
                    while w != from {
                        let (p, i) = via[&w];
                        used.push(i);
                        w = p;
                    }
                    return Some(used);
                }
                queue.push_back(v);
            }
        }
        None
    };
    for x in f.vars() {
        if let (Some(a), Some(b)) = (path(x.pos(), x.neg()), path(x.neg(), x.pos())) {
            return Some(a.into_iter().chain(b).collect());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;
    use crate::formula::brute_force_sat;

    fn brute_min_deletions(f: &CnfFormula, deletable: impl Fn(&Clause) -> bool) -> usize {
        let candidates: Vec<usize> = (0..f.len()).filter(|&i| deletable(&f.clauses()[i])).collect();
        (0..=candidates.len())
            .find(|&size| {
                itertools::Itertools::combinations(candidates.iter(), size).any(|drop| {
                    let kept = f.clauses().iter().enumerate().filter(|(i, _)| !drop.contains(&i)).map(|(_, c)| c.clone());
                    brute_force_sat(&CnfFormula::from_clauses(kept)).unwrap().is_sat()
                })
            })
            .unwrap()
    }

    #[test]
    fn chain_shapes() {
        let one = lemma_2sat_chain(&cnf![[1]], 1);
        assert_eq!(one.f2, cnf![[-1, -2]]);
        assert_eq!(one.f2star, one.f2);
        let two = lemma_2sat_chain(&cnf![[1, 2]], 1);
        assert_eq!(two.f2.len(), 3);
        assert_eq!(two.f2.clauses().iter().filter(|c| c.positive_count() == 2).count(), 1);
        assert_eq!(two.f2star.len(), 2 + 4);
    }

    #[test]
    fn complete_two_variable_formula() {
        let f = cnf![[1, 2], [-1, 2], [1, -2], [-1, -2]];
        let chain = lemma_2sat_chain(&f, 1);
        let negative = |c: &Clause| c.positive_count() == 0;
        assert_eq!(min_deletions_to_sat(&chain.f2, negative, 4).unwrap(), Some(1));
        assert_eq!(brute_min_deletions(&chain.f2, negative), 1);
        assert_eq!(min_deletions_to_sat(&chain.f2star, |_| true, 4).unwrap(), Some(1));
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        for seed in 0..40 {
            let f = super::super::random_cnf(4, 6, 2, seed).unwrap();
            let expect = brute_min_deletions(&f, |_| true);
            assert_eq!(min_deletions_to_sat(&f, |_| true, f.len()).unwrap(), Some(expect), "{f}");
            if expect > 0 {
                assert_eq!(min_deletions_to_sat(&f, |_| true, expect - 1).unwrap(), None);
            }
        }
    }

    #[test]
    fn undeletable_contradiction() {
        let f = cnf![[1], [-1]];
        assert_eq!(min_deletions_to_sat(&f, |c| c.lits()[0].is_positive(), 1).unwrap(), Some(1));
        assert_eq!(min_deletions_to_sat(&f, |_| false, 2).unwrap(), None);
        assert!(min_deletions_to_sat(&cnf![[1, 2, 3]], |_| true, 1).is_err());
    }
}
