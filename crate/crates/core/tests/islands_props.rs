mod common;

use backdoors::formula::brute_force_count;
use backdoors::islands::{count, enumerate_obstructions, is_member, BaseClass, ClassId};
use backdoors::{Clause, CnfFormula, Var, Weighting};
use common::{any_class, assignment, class_where, formula};
use proptest::prelude::*;

fn shifted(f: &CnfFormula, by: u32) -> CnfFormula {
    CnfFormula::from_clauses(f.clauses().iter().map(|c| {
        Clause::new(c.lits().iter().map(|l| Var::new(l.var().id() + by).lit(l.polarity()))).unwrap()
    }))
}

proptest! {
    #![proptest_config(ProptestConfig { max_global_rejects: 1 << 20, ..ProptestConfig::default() })]

    #[test]
    fn clause_defined_classes_check_clause_by_clause(class in class_where(BaseClass::clause_defined), f in formula(4, 6)) {
        let each = f.clauses().iter().all(|c| is_member(class, &CnfFormula::from_clauses([c.clone()])));
        prop_assert_eq!(is_member(class, &f), each);
    }

    #[test]
    fn clause_induced_classes_are_closed_under_subsets(class in class_where(BaseClass::clause_induced), f in formula(4, 5), mask in any::<u32>()) {
        prop_assume!(is_member(class, &f));
        let sub = CnfFormula::from_clauses(
            f.clauses().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c.clone()),
        );
        prop_assert!(is_member(class, &sub), "{} in {} but {} is not", f, class, sub);
    }

    #[test]
    fn self_reducible_classes_are_closed_under_reduction(class in class_where(BaseClass::self_reducible), f in formula(4, 6), tau in assignment(4)) {
        prop_assume!(is_member(class, &f));
        let g = f.reduce(&tau);
        prop_assert!(is_member(class, &g), "{} in {} but {} is not", f, class, g);
    }

    #[test]
    fn disjoint_unions_stay_in_the_class(class in any_class(), f1 in formula(3, 4), f2 in formula(3, 4)) {
        prop_assume!(class.disjoint_union_closed() && is_member(class, &f1) && is_member(class, &f2));
        let u = f1.union(&shifted(&f2, 3));
        prop_assert!(is_member(class, &u), "{} not in {}", u, class);
    }

    #[test]
    fn clustering_iff_obstruction_free(f in formula(4, 6)) {
        let clu = BaseClass::plain(ClassId::Clu);
        prop_assert_eq!(is_member(clu, &f), enumerate_obstructions(&f).is_empty());
    }

    #[test]
    fn counting_matches_enumeration(id in prop::sample::select(vec![ClassId::Clu, ClassId::Forest]), f in formula(4, 5), num in 0i64..=4) {
        let class = BaseClass::plain(id);
        prop_assume!(is_member(class, &f));
        let w = Weighting::uniform().with(Var::new(1), num, 4).unwrap();
        prop_assert_eq!(count(class, &f, &w).unwrap(), brute_force_count(&f, &w).unwrap());
    }
}

#[test]
fn pure_literal_classes_are_not_closed_under_reduction() {
    let pl = BaseClass::plain(ClassId::PL);
    let f = backdoors::cnf![[1, 2], [1, -2]];
    assert!(is_member(pl, &f));
    assert!(!is_member(pl, &f.assign(Var::new(1), false)));
    assert!(!pl.self_reducible());

    let uppl = BaseClass::plain(ClassId::UPPL);
    let g = backdoors::cnf![[-1, -2], [-1, -2, -3], [1, 2, -3]];
    assert!(is_member(uppl, &g));
    assert!(!is_member(uppl, &g.assign(Var::new(3), true)));
    assert!(!uppl.self_reducible());
}

#[test]
fn closure_properties_on_the_tiny_universe() {
    use backdoors::genbench::tiny_universe;
    use backdoors::Assignment;
    use std::collections::BTreeSet;

    let vars: BTreeSet<Var> = (1..=3).map(Var::new).collect();
    let partial: Vec<Assignment> = (0..27u32)
        .map(|code| {
            vars.iter().enumerate().fold(Assignment::new(), |a, (i, &v)| match code / 3u32.pow(i as u32) % 3 {
                0 => a,
                digit => a.with(v, digit == 2),
            })
        })
        .collect();
    let universe = tiny_universe(3, 3, 3);
    for class in common::all_classes() {
        for f in universe.iter().filter(|f| is_member(class, f)) {
            if class.self_reducible() {
                for tau in &partial {
                    assert!(is_member(class, &f.reduce(tau)), "{f} in {class}, reduct under {tau:?} is not");
                }
            }
            if class.clause_induced() {
                for mask in 0u32..1 << f.len() {
                    let sub = CnfFormula::from_clauses(
                        f.clauses().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c.clone()),
                    );
                    assert!(is_member(class, &sub), "{f} in {class}, {sub} is not");
                }
            }
        }
    }
}
