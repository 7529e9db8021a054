//! Clustering formulas: variable-disjoint unions of hitting formulas.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::formula::{Clause, CnfFormula, Var, Weighting};

/// A minimal reason why a formula is not clustering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Obstruction {
    /// Two clauses sharing a literal without clashing.
    Overlap(Clause, Clause),
    /// `D1` clashes with `D2`, `D2` clashes with `D3`, `D1` and `D3` do not.
    Clash(Clause, Clause, Clause),
}

impl Obstruction {
    pub fn clauses(&self) -> Vec<&Clause> {
        match self {
            Obstruction::Overlap(a, b) => vec![a, b],
            Obstruction::Clash(a, b, c) => vec![a, b, c],
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses().into_iter().flat_map(|c| c.vars()).collect()
    }
}

/// All obstructions: overlap pairs `(i, j)` with `i < j` first, then clash
/// triples `(D1, D2, D3)` by clause index with `D1` before `D3`.
pub fn enumerate_obstructions(f: &CnfFormula) -> Vec<Obstruction> {
    let mut out: Vec<Obstruction> = overlaps(f).collect();
    out.extend(clashes(f));
    out
}

pub(crate) fn first_obstruction(f: &CnfFormula) -> Option<Obstruction> {
    overlaps(f).next().or_else(|| clashes(f).next())
}

fn overlaps(f: &CnfFormula) -> impl Iterator<Item = Obstruction> + '_ {
    let cs = f.clauses();
    (0..cs.len()).flat_map(move |i| {
        (i + 1..cs.len())
            .filter(move |&j| cs[i].overlaps_with(&cs[j]) && !cs[i].clashes_with(&cs[j]))
            .map(move |j| Obstruction::Overlap(cs[i].clone(), cs[j].clone()))
    })
}

fn clashes(f: &CnfFormula) -> impl Iterator<Item = Obstruction> + '_ {
    let cs = f.clauses();
    let n = cs.len();
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| {
            (i + 1..n)
                .filter(move |&k| {
                    j != i
                        && j != k
                        && cs[i].clashes_with(&cs[j])
                        && cs[j].clashes_with(&cs[k])
                        && !cs[i].clashes_with(&cs[k])
                })
                .map(move |k| Obstruction::Clash(cs[i].clone(), cs[j].clone(), cs[k].clone()))
        })
    })
}

/// Splits the clauses into classes of the "shares a variable" relation.
/// The empty clause forms its own component.
pub(crate) fn components(f: &CnfFormula) -> Vec<Vec<&Clause>> {
    let cs = f.clauses();
    let mut comp: Vec<usize> = (0..cs.len()).collect();
    fn find(comp: &mut [usize], mut i: usize) -> usize {
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    let mut owner: std::collections::BTreeMap<Var, usize> = Default::default();
    for (i, c) in cs.iter().enumerate() {
        for x in c.vars() {
            match owner.get(&x) {
                Some(&j) => {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a.max(b)] = a.min(b);
                }
                None => {
                    owner.insert(x, i);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<&Clause>> = Default::default();
    for (i, c) in cs.iter().enumerate() {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(c);
    }
    groups.into_values().collect()
}

fn is_hitting(clauses: &[&Clause]) -> bool {
    clauses
        .iter()
        .enumerate()
        .all(|(i, a)| clauses[i + 1..].iter().all(|b| a.clashes_with(b)))
}

pub(crate) fn is_clustering(f: &CnfFormula) -> bool {
    components(f).iter().all(|c| is_hitting(c))
}

/// In a hitting formula every assignment falsifies at most one clause, so
/// the falsifying weight is a plain sum over clauses.
pub(crate) fn clu_count(f: &CnfFormula, w: &Weighting) -> BigRational {
    components(f)
        .iter()
        .map(|comp| {
            let falsified: BigRational = comp
                .iter()
                .map(|c| {
                    c.lits()
                        .iter()
                        .map(|&l| w.lit_weight(!l))
                        .fold(BigRational::one(), |acc, x| acc * x)
                })
                .fold(BigRational::zero(), |acc, x| acc + x);
            BigRational::one() - falsified
        })
        .fold(BigRational::one(), |acc, x| acc * x)
}

pub(crate) fn clu_sat(f: &CnfFormula) -> bool {
    clu_count(f, &Weighting::uniform()) > BigRational::zero()
}
