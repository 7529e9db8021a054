use std::collections::{BTreeSet, HashSet};

use super::{in_class_sat, strong_counterexample, weak_witness, Algorithm, BackdoorResult, Certificate};
use crate::error::{Error, Result};
use crate::formula::{Assignment, CnfFormula, Var};
use crate::islands::{is_member, obstruction_vars, BaseClass, ClassId};

fn supported(class: BaseClass) -> Result<()> {
    if class.empty_clause_detection || !(class.id.is_schaefer() || class.id == ClassId::Clu) {
        return Err(Error::Unsupported(format!(
            "search trees need a clause-defined class or clu, got {class}"
        )));
    }
    Ok(())
}

fn lex_key(b: &BTreeSet<Var>) -> Vec<Var> {
    b.iter().copied().collect()
}

/// Bounded search tree for weak backdoors of clause-defined classes and Clu.
///
/// A node is a partial assignment `τ`. If `F[τ]` is in the class it is a
/// leaf (successful iff the reduct is satisfiable, since further
/// assignments cannot make an unsatisfiable reduct satisfiable). Otherwise
/// any extension of `τ` that reaches the class must assign a variable of an
/// obstruction in `F[τ]`, so the tree branches on each such variable and
/// value. Iterative deepening yields the minimum size; all successes at that
/// depth are collected so ties break lexicographically.
///
/// Exponential in the obstruction size, i.e. the clause width.
pub fn detect_weak_searchtree(f: &CnfFormula, class: BaseClass, k: usize) -> Result<BackdoorResult> {
    supported(class)?;
    let n = f.num_vars();
    for depth in 0..=k.min(n) {
        let mut search = WeakSearch { f, class, visited: HashSet::new(), found: BTreeSet::new() };
        search.explore(Assignment::new(), depth);
        if let Some(best) = search.found.into_iter().next() {
            let b: BTreeSet<Var> = best.into_iter().collect();
            let tau = weak_witness(f, &b, class).expect("found by search");
            return Ok(BackdoorResult {
                variables: b,
                certificate: Certificate::Witness(tau),
                algorithm: Algorithm::WeakSearchTree,
            });
        }
    }
    Err(Error::NoneWithin(k))
}

struct WeakSearch<'a> {
    f: &'a CnfFormula,
    class: BaseClass,
    visited: HashSet<Assignment>,
    found: BTreeSet<Vec<Var>>,
}

impl WeakSearch<'_> {
    fn explore(&mut self, tau: Assignment, remaining: usize) {
        if !self.visited.insert(tau.clone()) {
            return;
        }
        let g = self.f.reduce(&tau);
        if is_member(self.class, &g) {
            if in_class_sat(self.class, &g) {
                self.found.insert(lex_key(&tau.domain()));
            }
            return;
        }
        if remaining == 0 {
            return;
        }
        let obstruction = obstruction_vars(self.class.id, &g).expect("non-member has an obstruction");
        for x in obstruction {
            for value in [false, true] {
                self.explore(tau.with(x, value), remaining - 1);
            }
        }
    }
}

/// Bounded search tree for strong backdoors of clause-defined classes and
/// Clu. A node is a candidate set `B`; if some `τ ∈ 2^B` leaves the class,
/// every strong backdoor containing `B` must also contain a variable of an
/// obstruction of `F[τ]`.
pub fn detect_strong_searchtree(f: &CnfFormula, class: BaseClass, k: usize) -> Result<BackdoorResult> {
    supported(class)?;
    let n = f.num_vars();
    for depth in 0..=k.min(n) {
        let mut search = StrongSearch { f, class, visited: HashSet::new(), found: BTreeSet::new() };
        search.explore(BTreeSet::new(), depth);
        if let Some(best) = search.found.into_iter().next() {
            return Ok(BackdoorResult {
                variables: best.into_iter().collect(),
                certificate: Certificate::None,
                algorithm: Algorithm::StrongSearchTree,
            });
        }
    }
    Err(Error::NoneWithin(k))
}

struct StrongSearch<'a> {
    f: &'a CnfFormula,
    class: BaseClass,
    visited: HashSet<BTreeSet<Var>>,
    found: BTreeSet<Vec<Var>>,
}

impl StrongSearch<'_> {
    fn explore(&mut self, b: BTreeSet<Var>, remaining: usize) {
        if !self.visited.insert(b.clone()) {
            return;
        }
        let Some(tau) = strong_counterexample(self.f, &b, self.class) else {
            self.found.insert(lex_key(&b));
            return;
        };
        if remaining == 0 {
            return;
        }
        let g = self.f.reduce(&tau);
        let obstruction = obstruction_vars(self.class.id, &g).expect("non-member has an obstruction");
        for x in obstruction {
            let mut next = b.clone();
            next.insert(x);
            self.explore(next, remaining - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;
    use crate::detect::{detect_bruteforce, BackdoorKind, BackdoorQuery};
    use crate::genbench::{hs_weak_instance, SetSystem};

    fn vars(ids: &[u32]) -> BTreeSet<Var> {
        ids.iter().map(|&i| Var::new(i)).collect()
    }

    fn horn() -> BaseClass {
        BaseClass::plain(ClassId::Horn)
    }

    #[test]
    fn weak_examples() {
        let r = detect_weak_searchtree(&cnf![[-1, 2]], horn(), 0).unwrap();
        assert!(r.variables.is_empty());
        let r = detect_weak_searchtree(&cnf![[1, 2, 3]], horn(), 1).unwrap();
        assert_eq!(r.variables, vars(&[1]));
        assert_eq!(r.certificate, Certificate::Witness(Assignment::single(Var::new(1), true)));
    }

    #[test]
    fn weak_on_hitting_set_instance() {
        let s = SetSystem::new(vec![vars(&[1, 2]), vars(&[2, 3])], 1).unwrap();
        let inst = hs_weak_instance(&s, ClassId::Horn).unwrap();
        let r = detect_weak_searchtree(&inst.formula, horn(), 1).unwrap();
        assert_eq!(r.variables, vars(&[2]));
    }

    #[test]
    fn strong_examples() {
        let r = detect_strong_searchtree(&cnf![[1, 2], [2, 3]], horn(), 1).unwrap();
        assert_eq!(r.variables, vars(&[2]));
        // with set semantics the x=0 reduct {∅, {y}} is clustering
        let clu = BaseClass::plain(ClassId::Clu);
        let f = cnf![[1], [1, 2], [2]];
        let r = detect_strong_searchtree(&f, clu, 1).unwrap();
        let q = BackdoorQuery::new(BackdoorKind::Strong, clu, 1);
        assert_eq!(r.variables, detect_bruteforce(&f, &q).unwrap().variables);
        assert_eq!(r.variables, vars(&[1]));
    }

    #[test]
    fn unsupported_class() {
        let rhorn = BaseClass::plain(ClassId::RHorn);
        assert!(matches!(detect_weak_searchtree(&cnf![[1]], rhorn, 1), Err(Error::Unsupported(_))));
    }
}
