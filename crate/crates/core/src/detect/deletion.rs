use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{Algorithm, BackdoorResult, Certificate};
use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, Lit, Var};
use crate::graphkit::{
    incidence_graph, lemma_graph, lex::lex_least, min_fvs_constrained, min_vertex_cover, TaggedGraph, VertexTag,
};
use crate::islands::{enumerate_obstructions, first_obstruction, is_horn, Obstruction};

/// Deleting all of `x` or all of `y` destroys the associated obstruction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DeletionPair {
    pub x: BTreeSet<Var>,
    pub y: BTreeSet<Var>,
}

fn lit_vars<'a>(lits: impl Iterator<Item = &'a Lit>) -> BTreeSet<Var> {
    lits.map(|l| l.var()).collect()
}

impl DeletionPair {
    pub fn of(obstruction: &Obstruction) -> DeletionPair {
        match obstruction {
            Obstruction::Overlap(c1, c2) => DeletionPair {
                x: lit_vars(c1.lits().iter().filter(|l| c2.contains(**l))),
                y: lit_vars(
                    c1.lits()
                        .iter()
                        .filter(|l| !c2.contains(**l))
                        .chain(c2.lits().iter().filter(|l| !c1.contains(**l))),
                ),
            },
            Obstruction::Clash(d1, d2, d3) => {
                let side = |a: &Clause, b: &Clause| {
                    lit_vars(a.lits().iter().filter(|l| !b.contains(**l) && d2.contains(!**l)))
                };
                DeletionPair { x: side(d1, d3), y: side(d3, d1) }
            }
        }
    }
}

pub fn deletion_pairs(f: &CnfFormula) -> Vec<DeletionPair> {
    let pairs: BTreeSet<DeletionPair> = enumerate_obstructions(f).iter().map(DeletionPair::of).collect();
    pairs.into_iter().collect()
}

/// `G_F`: vertices `var(F)`, and `xy` an edge whenever some deletion pair
/// `{X, Y}` has `x ∈ X` and `y ∈ Y`.
pub fn obstruction_graph(f: &CnfFormula) -> TaggedGraph {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let mut g = TaggedGraph::new();
    for &x in &vars {
        g.add_vertex(VertexTag::Variable(x));
    }
    let index = |x: &Var| vars.binary_search(x).expect("variable of F");
    for pair in deletion_pairs(f) {
        for x in &pair.x {
            for y in &pair.y {
                g.add_edge(index(x), index(y));
            }
        }
    }
    g
}

/// Deletion Clu backdoors by branching on obstructions of the current
/// formula.
///
/// A vertex cover of [`obstruction_graph`] is not always enough: deleting
/// every clash variable of two clauses that also share a literal turns
/// them into an overlap obstruction (`{¬x,¬y,z}, {y,z}` minus `y`). So the
/// search works on `F - S` directly. For an overlap `{C1, C2}` either all
/// shared variables or all differing variables must go (the latter merges
/// the clauses). For a clash `{D1, D2, D3}` one of the clashes with `D2`
/// must vanish, or `D1` and `D3` must become the same clause.
pub fn detect_deletion_clu(f: &CnfFormula, k: usize) -> Result<BackdoorResult> {
    let mut search = BranchSearch::new(clu_branches);
    let chosen = search.minimum(f, k.min(f.num_vars()), None).ok_or(Error::NoneWithin(k))?;
    Ok(BackdoorResult {
        variables: chosen,
        certificate: Certificate::None,
        algorithm: Algorithm::DeletionCluObstructions,
    })
}

fn clu_branches(f: &CnfFormula) -> Option<Vec<BTreeSet<Var>>> {
    let clash_vars = |a: &Clause, b: &Clause| lit_vars(a.lits().iter().filter(|l| b.contains(!**l)));
    let differ = |a: &Clause, b: &Clause| {
        lit_vars(a.lits().iter().filter(|l| !b.contains(**l)).chain(b.lits().iter().filter(|l| !a.contains(**l))))
    };
    Some(match first_obstruction(f)? {
        Obstruction::Overlap(c1, c2) => {
            vec![lit_vars(c1.lits().iter().filter(|l| c2.contains(**l))), differ(&c1, &c2)]
        }
        Obstruction::Clash(d1, d2, d3) => vec![clash_vars(&d1, &d2), clash_vars(&d2, &d3), differ(&d1, &d3)],
    })
}

/// Deletion Forest backdoors.
///
/// A feedback vertex set of the incidence graph restricted to variable
/// vertices is always a deletion backdoor, but it can be beaten: deleting
/// variables may make two clauses identical, and the merged clause takes a
/// cycle with it (`{x,y,z}, {x,y,¬z}` needs only `z`). The FVS size is used
/// as an upper bound and smaller sizes are searched by branching on a
/// shortest incidence cycle of the current formula: either one of its
/// variables is deleted, or two of its clauses are merged by deleting every
/// variable they differ on.
pub fn detect_deletion_forest(f: &CnfFormula, k: usize) -> Result<BackdoorResult> {
    let n = f.num_vars();
    let g = incidence_graph(f);
    let is_var = |v: usize| matches!(g.tag(v), VertexTag::Variable(_));
    let upper = match min_fvs_constrained(&g, is_var, k.min(n)) {
        Ok(fvs) => Some(fvs.len()),
        Err(Error::NoneWithin(_)) => None,
        Err(e) => return Err(e),
    };
    let mut search = BranchSearch::new(forest_branches);
    let chosen = search.minimum(f, k.min(n), upper).ok_or(Error::NoneWithin(k))?;
    Ok(BackdoorResult {
        variables: chosen,
        certificate: Certificate::None,
        algorithm: Algorithm::DeletionForestCycles,
    })
}

fn forest_branches(f: &CnfFormula) -> Option<Vec<BTreeSet<Var>>> {
    let g = incidence_graph(f);
    let cycle = g.shortest_cycle()?;
    let mut cycle_vars = BTreeSet::new();
    let mut cycle_clauses = Vec::new();
    for v in cycle {
        match g.tag(v) {
            VertexTag::Variable(x) => {
                cycle_vars.insert(x);
            }
            VertexTag::Clause(i) => cycle_clauses.push(&f.clauses()[i]),
            VertexTag::Literal(_) => unreachable!("incidence graph"),
        }
    }
    let mut branches: Vec<BTreeSet<Var>> = cycle_vars.iter().map(|&x| BTreeSet::from([x])).collect();
    for (i, a) in cycle_clauses.iter().enumerate() {
        for b in &cycle_clauses[i + 1..] {
            let differ = lit_vars(
                a.lits().iter().filter(|l| !b.contains(**l)).chain(b.lits().iter().filter(|l| !a.contains(**l))),
            );
            if differ.is_disjoint(&cycle_vars) {
                branches.push(differ);
            }
        }
    }
    Some(branches)
}

/// Bounded search for deletion sets. `branches` returns `None` when the
/// formula is in the class, and otherwise sets of variables one of which
/// every deletion backdoor must contain.
struct BranchSearch<B> {
    branches: B,
    failed: HashSet<(CnfFormula, BTreeSet<Var>, usize)>,
}

impl<B: Fn(&CnfFormula) -> Option<Vec<BTreeSet<Var>>>> BranchSearch<B> {
    fn new(branches: B) -> Self {
        BranchSearch { branches, failed: HashSet::new() }
    }

    /// The lexicographically least minimum deletion set of size at most
    /// `k`. `upper` is the size of a deletion set known to exist.
    fn minimum(&mut self, f: &CnfFormula, k: usize, upper: Option<usize>) -> Option<BTreeSet<Var>> {
        let limit = upper.map_or(k, |u| u.saturating_sub(1));
        let size = (0..=limit).find(|&b| self.decide(f, &BTreeSet::new(), b)).or(upper)?;
        let candidates: Vec<Var> = f.vars().into_iter().collect();
        let chosen = lex_least(&candidates, size, |fin, fout| {
            let deleted: BTreeSet<Var> = fin.iter().copied().collect();
            let forbidden: BTreeSet<Var> = fout.iter().copied().collect();
            fin.len() <= size && self.decide(&f.delete_vars(&deleted), &forbidden, size - fin.len())
        });
        Some(chosen.into_iter().collect())
    }

    fn decide(&mut self, f: &CnfFormula, forbidden: &BTreeSet<Var>, budget: usize) -> bool {
        let Some(branches) = (self.branches)(f) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let key = (f.clone(), forbidden.clone(), budget);
        if self.failed.contains(&key) {
            return false;
        }
        for set in branches {
            if set.is_empty() || set.len() > budget || !set.is_disjoint(forbidden) {
                continue;
            }
            if self.decide(&f.delete_vars(&set), forbidden, budget - set.len()) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}

/// Deletion RHorn backdoors through a vertex cover of the literal graph.
///
/// A cover `K` has at least one endpoint of every matching edge `x^0 x^1`;
/// `B` collects the variables with both endpoints in `K` and the renaming
/// flips every other variable whose positive literal is in `K`. Literals
/// that are positive after renaming are then exactly those outside `K`, so
/// no clause of `F - B` keeps two of them. Conversely every deletion
/// backdoor with its renaming yields a cover of size `|M| + |B|`.
pub fn detect_deletion_rhorn(f: &CnfFormula, k: usize) -> Result<BackdoorResult> {
    let lg = lemma_graph(f);
    let m = lg.matching.len();
    let cover: BTreeSet<usize> = match min_vertex_cover(&lg.graph, m + k, |_| true) {
        Ok(c) => c.into_iter().collect(),
        Err(Error::NoneWithin(_)) => return Err(Error::NoneWithin(k)),
        Err(e) => return Err(e),
    };
    let mut deleted = BTreeSet::new();
    let mut renamed = BTreeSet::new();
    for &(neg, pos) in &lg.matching {
        let x = lg.lit_of(pos).var();
        match (cover.contains(&neg), cover.contains(&pos)) {
            (true, true) => {
                deleted.insert(x);
            }
            (false, true) => {
                renamed.insert(x);
            }
            _ => {}
        }
    }
    if !is_horn(&f.delete_vars(&deleted).rename(&renamed)) {
        return Err(Error::InvalidBackdoor {
            kind: "deletion".into(),
            reason: "renaming derived from the literal cover is not Horn".into(),
        });
    }
    Ok(BackdoorResult {
        variables: deleted,
        certificate: Certificate::Renaming(renamed),
        algorithm: Algorithm::DeletionRHornVertexCover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;
    use crate::detect::{detect_bruteforce, BackdoorKind, BackdoorQuery};
    use crate::islands::{BaseClass, ClassId};

    fn brute_size(f: &CnfFormula, id: ClassId) -> usize {
        let q = BackdoorQuery::new(BackdoorKind::Deletion, BaseClass::plain(id), f.num_vars());
        detect_bruteforce(f, &q).unwrap().size()
    }

    #[test]
    fn pairs_of_obstructions() {
        let f = cnf![[1], [1, 2]];
        assert_eq!(
            deletion_pairs(&f),
            vec![DeletionPair { x: BTreeSet::from([Var::new(1)]), y: BTreeSet::from([Var::new(2)]) }]
        );
        assert_eq!(detect_deletion_clu(&f, 2).unwrap().size(), 1);
        assert!(detect_deletion_clu(&cnf![[1, 2], [-1, -2]], 0).unwrap().variables.is_empty());

        let chain = cnf![[1], [-1, 2], [-2]];
        let pairs = deletion_pairs(&chain);
        assert!(pairs.contains(&DeletionPair { x: BTreeSet::from([Var::new(1)]), y: BTreeSet::from([Var::new(2)]) }));
    }

    #[test]
    fn clu_agrees_with_brute_force() {
        let f = cnf![[1, 2], [1, 3], [2, 3]];
        assert_eq!(detect_deletion_clu(&f, 3).unwrap().size(), brute_size(&f, ClassId::Clu));
    }

    #[test]
    fn clu_cover_of_obstruction_graph_is_not_enough() {
        let f = cnf![[-1, -2, -3], [-1, -2, 3], [-1, -3], [2, 3]];
        let g = obstruction_graph(&f);
        assert_eq!(min_vertex_cover(&g, 3, |_| true).unwrap().len(), 1);
        assert_eq!(detect_deletion_clu(&f, 1), Err(Error::NoneWithin(1)));
        assert_eq!(detect_deletion_clu(&f, 3).unwrap().size(), brute_size(&f, ClassId::Clu));
    }

    #[test]
    fn forest_examples() {
        assert!(detect_deletion_forest(&cnf![[1, 2], [2, 3]], 0).unwrap().variables.is_empty());
        assert_eq!(detect_deletion_forest(&cnf![[1, 2], [-1, -2]], 2).unwrap().size(), 1);
        let two = cnf![[1, 2], [-1, -2], [3, 4], [-3, -4]];
        assert_eq!(detect_deletion_forest(&two, 2).unwrap().size(), 2);
        assert_eq!(detect_deletion_forest(&two, 1), Err(Error::NoneWithin(1)));
    }

    #[test]
    fn forest_merging_beats_feedback_vertex_set() {
        let f = cnf![[1, 2, 3], [1, 2, -3]];
        let r = detect_deletion_forest(&f, 3).unwrap();
        assert_eq!(r.variables, BTreeSet::from([Var::new(3)]));
        assert_eq!(r.size(), brute_size(&f, ClassId::Forest));
    }

    #[test]
    fn rhorn_examples() {
        let horn = cnf![[-1, -2, 3], [1]];
        let r = detect_deletion_rhorn(&horn, 0).unwrap();
        assert!(r.variables.is_empty());
        let complete = cnf![[1, 2], [-1, 2], [1, -2], [-1, -2]];
        assert_eq!(detect_deletion_rhorn(&complete, 0), Err(Error::NoneWithin(0)));
        assert_eq!(detect_deletion_rhorn(&complete, 1).unwrap().size(), 1);
        assert!(detect_deletion_rhorn(&CnfFormula::new(), 0).unwrap().variables.is_empty());
    }
}
