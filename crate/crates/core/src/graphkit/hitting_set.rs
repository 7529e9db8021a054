use std::collections::BTreeSet;

use super::lex::lex_least;
use crate::error::{Error, Result};
use crate::formula::Var;

/// Minimum hitting set of a family of sets of at most three variables.
pub fn min_hitting_set_3(sets: &[BTreeSet<Var>], k: usize) -> Result<BTreeSet<Var>> {
    if let Some(wide) = sets.iter().find(|s| s.len() > 3) {
        return Err(Error::WidthExceeded { width: wide.len(), limit: 3 });
    }
    min_hitting_set(sets, k)
}

/// Minimum hitting set by bounded branching on the first unhit set; the
/// lexicographically least among all minimum ones.
pub fn min_hitting_set(sets: &[BTreeSet<Var>], k: usize) -> Result<BTreeSet<Var>> {
    let sets: Vec<Vec<Var>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let universe: BTreeSet<Var> = sets.iter().flatten().copied().collect();
    let candidates: Vec<Var> = universe.into_iter().collect();

    let decide = |forced_in: &[Var], forced_out: &[Var], budget: usize| -> bool {
        if forced_in.len() > budget {
            return false;
        }
        let mut chosen: BTreeSet<Var> = forced_in.iter().copied().collect();
        let forbidden: BTreeSet<Var> = forced_out.iter().copied().collect();
        search(&sets, &forbidden, &mut chosen, budget)
    };

    let Some(size) = (0..=k.min(candidates.len())).find(|&b| decide(&[], &[], b)) else {
        return Err(Error::NoneWithin(k));
    };
    Ok(lex_least(&candidates, size, |fin, fout| decide(fin, fout, size))
        .into_iter()
        .collect())
}

fn search(
    sets: &[Vec<Var>],
    forbidden: &BTreeSet<Var>,
    chosen: &mut BTreeSet<Var>,
    budget: usize,
) -> bool {
    let unhit: Vec<&Vec<Var>> = sets
        .iter()
        .filter(|s| !s.iter().any(|x| chosen.contains(x)))
        .collect();
    let Some(first) = unhit.first() else {
        return true;
    };
    if chosen.len() >= budget || packing_bound(&unhit) > budget - chosen.len() {
        return false;
    }
    for &x in first.iter() {
        if forbidden.contains(&x) {
            continue;
        }
        chosen.insert(x);
        let ok = search(sets, forbidden, chosen, budget);
        chosen.remove(&x);
        if ok {
            return true;
        }
    }
    false
}

/// Number of pairwise disjoint sets found greedily.
fn packing_bound(sets: &[&Vec<Var>]) -> usize {
    let mut used = BTreeSet::new();
    let mut count = 0;
    for s in sets {
        if s.iter().all(|x| !used.contains(x)) {
            used.extend(s.iter().copied());
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(sets: &[&[u32]]) -> Vec<BTreeSet<Var>> {
        sets.iter()
            .map(|s| s.iter().map(|&i| Var::new(i)).collect())
            .collect()
    }

    fn brute(sets: &[BTreeSet<Var>]) -> Option<BTreeSet<Var>> {
        let universe: Vec<Var> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut best: Option<Vec<Var>> = None;
        for mask in 0u32..1 << universe.len() {
            let pick: Vec<Var> = (0..universe.len()).filter(|&i| mask >> i & 1 == 1).map(|i| universe[i]).collect();
            if sets.iter().all(|s| pick.iter().any(|x| s.contains(x))) {
                let better = best.as_ref().is_none_or(|b| (pick.len(), &pick) < (b.len(), b));
                if better {
                    best = Some(pick);
                }
            }
        }
        best.map(|b| b.into_iter().collect())
    }

    #[test]
    fn examples() {
        assert!(min_hitting_set_3(&[], 0).unwrap().is_empty());
        assert_eq!(min_hitting_set_3(&family(&[&[1, 2, 3]]), 3).unwrap().len(), 1);
        let tri = family(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(min_hitting_set_3(&tri, 1), Err(Error::NoneWithin(1)));
        assert_eq!(min_hitting_set_3(&tri, 3).unwrap(), family(&[&[1, 2]])[0]);
        assert!(matches!(
            min_hitting_set_3(&family(&[&[1, 2, 3, 4]]), 2),
            Err(Error::WidthExceeded { .. })
        ));
        // an empty set cannot be hit
        assert!(min_hitting_set(&family(&[&[]]), 5).is_err());
    }

    #[test]
    fn matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.random_range(0..7);
            let sets: Vec<BTreeSet<Var>> = (0..m)
                .map(|_| {
                    let w = rng.random_range(1..=3);
                    (0..w).map(|_| Var::new(rng.random_range(1..=7))).collect()
                })
                .collect();
            assert_eq!(min_hitting_set_3(&sets, 7).ok(), brute(&sets), "{sets:?}");
        }
    }
}
