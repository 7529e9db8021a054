use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use super::{
    strong_counterexample, weak_witness, Algorithm, BackdoorKind, BackdoorQuery, BackdoorResult,
    Certificate,
};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, Var};
use crate::islands::{find_renaming, is_member, ClassId};

pub const DEFAULT_BUDGET: u128 = 1 << 24;

const CHUNK: usize = 1024;

/// Worst-case number of (subset, assignment) checks for sizes `0..=k`.
pub fn bruteforce_cost(n: usize, k: usize, kind: BackdoorKind) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=k.min(n) {
        let per_set: u128 = match kind {
            BackdoorKind::Deletion => 1,
            _ => 1u128.checked_shl(i as u32).unwrap_or(u128::MAX),
        };
        total = total.saturating_add(binom.saturating_mul(per_set));
        binom = binom.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Enumerates subsets of `var(F)` by size, and in lexicographic order within
/// a size, so the first hit is the lexicographically least minimum backdoor.
///
/// This is the reference oracle and the only detector for classes without a
/// specialized algorithm.
pub fn detect_bruteforce(f: &CnfFormula, query: &BackdoorQuery) -> Result<BackdoorResult> {
    query.validate()?;
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let required = bruteforce_cost(vars.len(), query.k, query.kind);
    if required > query.budget {
        return Err(Error::BudgetExceeded { required, budget: query.budget });
    }
    let class = query.class;
    let accepts = |b: &BTreeSet<Var>| -> Option<Certificate> {
        match query.kind {
            BackdoorKind::Weak => weak_witness(f, b, class).map(Certificate::Witness),
            BackdoorKind::Strong => strong_counterexample(f, b, class).is_none().then_some(Certificate::None),
            BackdoorKind::Deletion => {
                let g = f.delete_vars(b);
                is_member(class, &g).then(|| match class.id {
                    ClassId::RHorn => Certificate::Renaming(find_renaming(&g).expect("member")),
                    _ => Certificate::None,
                })
            }
        }
    };
    for size in 0..=query.k.min(vars.len()) {
        for chunk in &vars.iter().copied().combinations(size).chunks(CHUNK) {
            let chunk: Vec<BTreeSet<Var>> = chunk.map(|c| c.into_iter().collect()).collect();
            let hit = chunk
                .par_iter()
                .map(|b| accepts(b).map(|cert| (b, cert)))
                .find_first(Option::is_some)
                .flatten();
            if let Some((b, certificate)) = hit {
                return Ok(BackdoorResult { variables: b.clone(), certificate, algorithm: Algorithm::BruteForce });
            }
        }
    }
    Err(Error::NoneWithin(query.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;
    use crate::genbench::or_gadget;
    use crate::islands::BaseClass;

    fn query(kind: BackdoorKind, id: ClassId, k: usize) -> BackdoorQuery {
        BackdoorQuery::new(kind, BaseClass::plain(id), k)
    }

    #[test]
    fn members_need_nothing() {
        let f = cnf![[-1, -2, 3], [1]];
        for kind in [BackdoorKind::Weak, BackdoorKind::Strong, BackdoorKind::Deletion] {
            let r = detect_bruteforce(&f, &query(kind, ClassId::Horn, 0)).unwrap();
            assert!(r.variables.is_empty());
        }
    }

    #[test]
    fn empty_clause_has_no_weak_backdoor() {
        let f = cnf![[], [1, 2]];
        for id in ClassId::ALL {
            assert_eq!(
                detect_bruteforce(&f, &query(BackdoorKind::Weak, id, 3)),
                Err(Error::NoneWithin(3)),
                "{id:?}"
            );
        }
    }

    #[test]
    fn clu_or_gadget_has_weak_backdoor_of_size_one() {
        let x = [Var::new(1), Var::new(2)];
        let g = or_gadget(ClassId::Clu, &x).unwrap();
        let r = detect_bruteforce(&g.formula, &query(BackdoorKind::Weak, ClassId::Clu, 1)).unwrap();
        assert_eq!(r.size(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let f = cnf![[1, 2, 3, 4, 5, 6]];
        let q = query(BackdoorKind::Strong, ClassId::Horn, 6).with_budget(10);
        assert!(matches!(detect_bruteforce(&f, &q), Err(Error::BudgetExceeded { .. })));
        assert_eq!(bruteforce_cost(3, 3, BackdoorKind::Strong), 1 + 6 + 12 + 8);
        assert_eq!(bruteforce_cost(3, 1, BackdoorKind::Deletion), 4);
    }
}
