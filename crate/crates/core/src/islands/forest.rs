//! Dynamic programming over the incidence forest.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::formula::{Clause, CnfFormula, Lit, Var, Weighting};

/// The two operations the tree recurrence needs.
pub(crate) trait Semiring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Semiring for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
}

impl Semiring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

struct Incidence<'a> {
    clauses: &'a [Clause],
    occurs: BTreeMap<Var, Vec<usize>>,
}

/// Sums `∏ w(ℓ)` over satisfying total assignments of `var(F)`.
///
/// Requires an acyclic incidence graph; each component is rooted at a clause
/// and evaluated bottom-up. A clause vertex carries two values: the weight of
/// its subtree with the clause already satisfied, and with it still open.
pub(crate) fn forest_value<S: Semiring>(f: &CnfFormula, weight: &impl Fn(Lit) -> S) -> S {
    let mut occurs: BTreeMap<Var, Vec<usize>> = BTreeMap::new();
    for (i, c) in f.clauses().iter().enumerate() {
        for l in c.lits() {
            occurs.entry(l.var()).or_default().push(i);
        }
    }
    let inc = Incidence { clauses: f.clauses(), occurs };
    let mut visited = vec![false; f.len()];
    let mut total = S::one();
    for root in 0..f.len() {
        if !visited[root] {
            total = total.mul(&inc.clause_value(root, None, weight, &mut visited));
        }
    }
    total
}

impl Incidence<'_> {
    fn var_value<S: Semiring>(
        &self,
        x: Var,
        parent: usize,
        weight: &impl Fn(Lit) -> S,
        visited: &mut [bool],
    ) -> [S; 2] {
        let mut out = [weight(x.neg()), weight(x.pos())];
        for &c in &self.occurs[&x] {
            if c == parent {
                continue;
            }
            for (b, slot) in out.iter_mut().enumerate() {
                *slot = slot.mul(&self.clause_value(c, Some((x, b == 1)), weight, visited));
            }
        }
        out
    }

    fn clause_value<S: Semiring>(
        &self,
        c: usize,
        parent: Option<(Var, bool)>,
        weight: &impl Fn(Lit) -> S,
        visited: &mut [bool],
    ) -> S {
        visited[c] = true;
        let clause = &self.clauses[c];
        let satisfied_by_parent = parent
            .is_some_and(|(x, b)| clause.lit_of(x).is_some_and(|l| l.is_true_under(b)));
        let (mut sat, mut open) =
            if satisfied_by_parent { (S::one(), S::zero()) } else { (S::zero(), S::one()) };
        for &l in clause.lits() {
            if parent.is_some_and(|(x, _)| x == l.var()) {
                continue;
            }
            let [f0, f1] = self.var_value(l.var(), c, weight, visited);
            let (f_true, f_false) = if l.is_positive() { (f1, f0) } else { (f0, f1) };
            sat = sat.mul(&f_true.add(&f_false)).add(&open.mul(&f_true));
            open = open.mul(&f_false);
        }
        sat
    }
}

pub(crate) fn forest_count(f: &CnfFormula, w: &Weighting) -> BigRational {
    forest_value(f, &|l| w.lit_weight(l))
}

pub(crate) fn forest_sat(f: &CnfFormula) -> bool {
    forest_value(f, &|_| true)
}
