use std::collections::BTreeSet;

use crate::formula::{Clause, CnfFormula, Var};
use crate::graphkit::two_sat;

/// Finds `X` with `r_X(F) ∈ Horn`, or `None` if `F` is not renamable Horn.
///
/// Uses one indicator per variable (true = flip). A literal `x^ε` is
/// positive after renaming iff `ε ≠ r_x`, so "not both `a` and `b`
/// positive" is the 2-clause `{r^ε_x, r^δ_y}` with the same polarities as
/// `a = x^ε`, `b = y^δ`. Among all solutions the lexicographically least
/// one (fewest flips on low variables) is returned.
pub fn find_renaming(f: &CnfFormula) -> Option<BTreeSet<Var>> {
    let mut system: Vec<Clause> = Vec::new();
    for c in f.clauses() {
        let lits = c.lits();
        for (i, &a) in lits.iter().enumerate() {
            for &b in &lits[i + 1..] {
                system.push(Clause::new([a, b]).expect("distinct variables"));
            }
        }
    }
    let mut system = CnfFormula::from_clauses(system);
    if !two_sat(&system).expect("width two").is_sat() {
        return None;
    }
    let mut flipped = BTreeSet::new();
    for x in system.vars() {
        let keep = system.with_clause(Clause::new([x.neg()]).expect("unit"));
        if two_sat(&keep).expect("width two").is_sat() {
            system = keep;
        } else {
            system = system.with_clause(Clause::new([x.pos()]).expect("unit"));
            flipped.insert(x);
        }
    }
    Some(flipped)
}
