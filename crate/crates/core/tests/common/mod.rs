#![allow(dead_code)]

use std::collections::BTreeSet;

use backdoors::islands::{BaseClass, ClassId};
use backdoors::{Assignment, Clause, CnfFormula, Var};
use proptest::prelude::*;

/// Formulas over `x1..x_vars` with up to `clauses` clauses of width ≤ 3.
pub fn formula(vars: u32, clauses: usize) -> impl Strategy<Value = CnfFormula> {
    prop::collection::vec(prop::collection::btree_map(1..=vars, any::<bool>(), 0..=3), 0..=clauses).prop_map(|cs| {
        CnfFormula::from_clauses(
            cs.into_iter().map(|c| Clause::new(c.into_iter().map(|(v, b)| Var::new(v).lit(b))).unwrap()),
        )
    })
}

pub fn assignment(vars: u32) -> impl Strategy<Value = Assignment> {
    prop::collection::btree_map(1..=vars, any::<bool>(), 0..=vars as usize).prop_map(|m| {
        m.into_iter().fold(Assignment::new(), |a, (v, b)| a.with(Var::new(v), b))
    })
}

pub fn var_set(vars: u32) -> impl Strategy<Value = BTreeSet<Var>> {
    prop::collection::btree_set((1..=vars).prop_map(Var::new), 0..=vars as usize)
}

pub fn all_classes() -> Vec<BaseClass> {
    ClassId::ALL
        .iter()
        .flat_map(|&id| [BaseClass::plain(id), BaseClass::with_empty_clause_detection(id)])
        .collect()
}

pub fn any_class() -> impl Strategy<Value = BaseClass> {
    prop::sample::select(all_classes())
}

pub fn plain_class() -> impl Strategy<Value = BaseClass> {
    prop::sample::select(ClassId::ALL.iter().map(|&id| BaseClass::plain(id)).collect::<Vec<_>>())
}

pub fn class_where(pred: fn(BaseClass) -> bool) -> impl Strategy<Value = BaseClass> {
    prop::sample::select(all_classes().into_iter().filter(|&c| pred(c)).collect::<Vec<_>>())
}
