//! Instance generators: the or-gadgets and reductions of the hardness
//! proofs, the backdoor tree family, the partitioned clique encoding, the
//! 2SAT chain behind deletion RHorn detection, and random formulas.
//!
//! Internal variables are allocated by a counter starting above the largest
//! external variable, so every generator is deterministic.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, Lit, Var};

mod clique;
mod gadgets;
mod lemma;

pub use clique::{pclique_instance, PartiteGraph};
pub use gadgets::{
    hs_weak_instance, or_gadget, or_gadget_with, rhorn_weak_gadget, strong_rhorn_instance, SetSystem,
};
pub use lemma::{lemma_2sat_chain, min_deletions_to_sat, LemmaChain};

/// Hands out fresh variables in increasing order.
#[derive(Debug, Clone)]
pub struct VarAllocator {
    next: u32,
}

impl VarAllocator {
    /// Starts right after the largest of `used` (or at 1).
    pub fn above<'a>(used: impl IntoIterator<Item = &'a Var>) -> VarAllocator {
        let max = used.into_iter().map(|v| v.id()).max().unwrap_or(0);
        VarAllocator { next: max + 1 }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var::new(self.next);
        self.next += 1;
        v
    }
}

/// Metadata describing how an instance was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub generator: String,
    pub class: Option<String>,
    pub parameters: BTreeMap<String, String>,
    pub external: Vec<Var>,
    pub internal: Vec<Var>,
}

/// A generated formula with its external / internal variable split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub formula: CnfFormula,
    pub external: Vec<Var>,
    pub internal: Vec<Var>,
}

impl Instance {
    pub fn describe(&self, generator: &str, class: Option<&str>, parameters: &[(&str, String)]) -> Construction {
        Construction {
            generator: generator.to_string(),
            class: class.map(str::to_string),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            external: self.external.clone(),
            internal: self.internal.clone(),
        }
    }
}

pub(crate) fn clause(lits: impl IntoIterator<Item = Lit>) -> Clause {
    Clause::new(lits).expect("generated clauses are not tautological")
}

/// Variables are `x_j = j` for `j ≤ 2n` and `y_i = 2n + i`. For each `i`:
///
/// ```text
/// {y_i, ¬x_1, …, ¬x_{2i-2}, x_{2i-1}, ¬x_{2i}, …, ¬x_{2n}}
/// {y_i, ¬x_1, …, ¬x_{2i-1}, x_{2i}, ¬x_{2i+1}, …, ¬x_{2n}}
/// ```
///
/// `{y_1, …, y_n}` is a smallest strong Horn backdoor, yet branching on the
/// `x_j` as a caterpillar gives a backdoor tree with `2n + 1` leaves.
pub fn backdoor_tree_family(n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameters("the tree family needs n ≥ 1".into()));
    }
    let x = |j: usize| Var::new(j as u32);
    let y = |i: usize| Var::new((2 * n + i) as u32);
    let mut clauses = Vec::with_capacity(2 * n);
    for i in 1..=n {
        for positive in [2 * i - 1, 2 * i] {
            let lits = std::iter::once(y(i).pos())
                .chain((1..=2 * n).map(|j| if j == positive { x(j).pos() } else { x(j).neg() }));
            clauses.push(clause(lits));
        }
    }
    Ok(Instance {
        formula: CnfFormula::from_clauses(clauses),
        external: (1..=n).map(y).collect(),
        internal: (1..=2 * n).map(x).collect(),
    })
}

/// `m` random clauses over `x_1..x_n`, each of a width drawn uniformly from
/// `1..=width` with distinct variables and random signs. Duplicates are
/// merged, so the result can have fewer than `m` clauses.
pub fn random_cnf(n: usize, m: usize, width: usize, seed: u64) -> Result<CnfFormula> {
    if m > 0 && (n == 0 || width == 0) {
        return Err(Error::InvalidParameters(format!(
            "cannot draw {m} clauses of width ≤ {width} over {n} variables"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = width.min(n);
    let clauses = (0..m).map(|_| {
        let w = rng.random_range(1..=width);
        let vars = sample(&mut rng, n, w).into_vec();
        clause(vars.into_iter().map(|i| Var::new(i as u32 + 1).lit(rng.random_bool(0.5))))
    });
    Ok(CnfFormula::from_clauses(clauses.collect::<Vec<_>>()))
}

/// `m` random sets over the elements `1..=n`, each of a size drawn from
/// `1..=max_size`, with hitting set budget `k`.
pub fn random_set_system(n: usize, m: usize, max_size: usize, k: usize, seed: u64) -> Result<SetSystem> {
    if m > 0 && (n == 0 || max_size == 0) {
        return Err(Error::InvalidParameters(format!(
            "cannot draw {m} nonempty sets of size ≤ {max_size} over {n} elements"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_size = max_size.min(n);
    let sets = (0..m)
        .map(|_| {
            let size = rng.random_range(1..=max_size);
            sample(&mut rng, n, size).into_iter().map(|i| Var::new(i as u32 + 1)).collect()
        })
        .collect();
    SetSystem::new(sets, k)
}

/// All formulas over variables `1..=n` with at most `max_clauses` clauses
/// of width at most `max_width`, including the empty clause. Formulas that
/// differ only by variable naming are all listed.
pub fn tiny_universe(n: usize, max_clauses: usize, max_width: usize) -> Vec<CnfFormula> {
    let vars: Vec<Var> = (1..=n as u32).map(Var::new).collect();
    let mut clauses: Vec<Clause> = Vec::new();
    // each variable is absent, negative or positive
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut lits = Vec::new();
        let mut c = code;
        for &v in &vars {
            match c % 3 {
                1 => lits.push(v.neg()),
                2 => lits.push(v.pos()),
                _ => {}
            }
            c /= 3;
        }
        if lits.len() <= max_width {
            clauses.push(clause(lits));
        }
    }
    clauses.sort();
    let mut out = Vec::new();
    let mut current = Vec::new();
    subsets(&clauses, 0, max_clauses, &mut current, &mut out);
    out
}

fn subsets(clauses: &[Clause], start: usize, left: usize, current: &mut Vec<Clause>, out: &mut Vec<CnfFormula>) {
    out.push(CnfFormula::from_clauses(current.clone()));
    if left == 0 {
        return;
    }
    for i in start..clauses.len() {
        current.push(clauses[i].clone());
        subsets(clauses, i + 1, left - 1, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;

    #[test]
    fn tree_family_n1() {
        let inst = backdoor_tree_family(1).unwrap();
        assert_eq!(inst.formula, cnf![[3, 1, -2], [3, -1, 2]]);
        let f3 = backdoor_tree_family(3).unwrap().formula;
        assert_eq!(f3.num_vars(), 9);
        assert_eq!(f3.len(), 6);
    }

    #[test]
    fn random_cnf_is_reproducible() {
        assert!(random_cnf(0, 0, 3, 1).unwrap().is_empty());
        let a = random_cnf(6, 10, 3, 42).unwrap();
        assert_eq!(a, random_cnf(6, 10, 3, 42).unwrap());
        assert!(a.max_width() <= 3);
        assert!(a.vars().iter().all(|v| v.id() <= 6));
        assert!(random_cnf(0, 2, 3, 1).is_err());
    }

    #[test]
    fn random_set_system_is_reproducible() {
        let s = random_set_system(5, 4, 3, 2, 7).unwrap();
        assert_eq!(s, random_set_system(5, 4, 3, 2, 7).unwrap());
        assert_eq!(s.sets.len(), 4);
        assert!(s.sets.iter().all(|x| !x.is_empty() && x.len() <= 3 && x.iter().all(|v| v.id() <= 5)));
        assert!(random_set_system(0, 1, 2, 0, 7).is_err());
    }

    #[test]
    fn universe_counts() {
        // 1 variable: clauses ∅, {¬x}, {x}; all subsets of size ≤ 4
        assert_eq!(tiny_universe(1, 4, 3).len(), 8);
        // 2 variables: 9 clauses, subsets of size ≤ 2
        assert_eq!(tiny_universe(2, 2, 2).len(), 1 + 9 + 36);
    }
}
