//! Exhaustive enumeration oracles. Every polynomial algorithm in the crate is
//! checked against these on small inputs.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Assignment, CnfFormula, SatResult, Var, Weighting};
use crate::error::{Error, Result};

/// Default cap on the number of variables brute force will enumerate.
pub const BRUTE_FORCE_VAR_LIMIT: usize = 24;

/// Clauses as bit masks over the indices of `var(F)`.
struct MaskedFormula {
    vars: Vec<Var>,
    clauses: Vec<(u64, u64)>,
}

impl MaskedFormula {
    fn new(f: &CnfFormula, limit: usize) -> Result<MaskedFormula> {
        let vars: Vec<Var> = f.vars().into_iter().collect();
        if vars.len() > limit.min(62) {
            return Err(Error::BudgetExceeded {
                required: 1u128 << vars.len().min(127),
                budget: 1u128 << limit.min(62),
            });
        }
        let index = |v: Var| vars.binary_search(&v).expect("variable of F");
        let clauses = f
            .clauses()
            .iter()
            .map(|c| {
                c.lits().iter().fold((0u64, 0u64), |(pos, neg), l| {
                    let bit = 1u64 << index(l.var());
                    if l.is_positive() {
                        (pos | bit, neg)
                    } else {
                        (pos, neg | bit)
                    }
                })
            })
            .collect();
        Ok(MaskedFormula { vars, clauses })
    }

    fn satisfied(&self, bits: u64) -> bool {
        self.clauses
            .iter()
            .all(|&(pos, neg)| pos & bits != 0 || neg & !bits != 0)
    }

    fn models(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.vars.len()).filter(move |&bits| self.satisfied(bits))
    }
}

/// Decides satisfiability by enumerating all of `2^var(F)`. The returned
/// model is the first one in binary counting order over ascending variables.
pub fn brute_force_sat(f: &CnfFormula) -> Result<SatResult> {
    brute_force_sat_with_limit(f, BRUTE_FORCE_VAR_LIMIT)
}

pub fn brute_force_sat_with_limit(f: &CnfFormula, limit: usize) -> Result<SatResult> {
    let masked = MaskedFormula::new(f, limit)?;
    let first = masked.models().next();
    Ok(match first {
        Some(bits) => SatResult::Sat(Assignment::from_bits(&masked.vars, bits)),
        None => SatResult::Unsat,
    })
}

/// `#(F)`, the number of models over `var(F)`.
pub fn brute_force_model_count(f: &CnfFormula) -> Result<u64> {
    let masked = MaskedFormula::new(f, BRUTE_FORCE_VAR_LIMIT)?;
    Ok(masked.models().count() as u64)
}

/// `#_w(F)`: the weight sum of all satisfying assignments in `2^var(F)`.
pub fn brute_force_count(f: &CnfFormula, w: &Weighting) -> Result<BigRational> {
    let masked = MaskedFormula::new(f, BRUTE_FORCE_VAR_LIMIT)?;
    let weights: Vec<(BigRational, BigRational)> = masked
        .vars
        .iter()
        .map(|&v| (w.lit_weight(v.neg()), w.lit_weight(v.pos())))
        .collect();
    let mut total = BigRational::zero();
    for bits in masked.models() {
        let term = weights
            .iter()
            .enumerate()
            .fold(BigRational::one(), |acc, (i, (w0, w1))| {
                acc * if bits >> i & 1 == 1 { w1 } else { w0 }
            });
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sat_examples() {
        assert_eq!(brute_force_sat(&cnf![[]]).unwrap(), SatResult::Unsat);
        assert_eq!(
            brute_force_sat(&CnfFormula::new()).unwrap(),
            SatResult::Sat(Assignment::new())
        );
        let f = cnf![[1], [-1, 2]];
        let expected: Assignment = [(Var::new(1), true), (Var::new(2), true)].into_iter().collect();
        assert_eq!(brute_force_sat(&f).unwrap(), SatResult::Sat(expected));
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute_force_count(&CnfFormula::new(), &Weighting::uniform()).unwrap(), q(1, 1));
        let w = Weighting::uniform().with(Var::new(1), 1, 3).unwrap();
        assert_eq!(brute_force_count(&cnf![[1]], &w).unwrap(), q(1, 3));
        // 3 of the 4 assignments satisfy x ∨ y
        assert_eq!(brute_force_count(&cnf![[1, 2]], &Weighting::uniform()).unwrap(), q(3, 4));
        assert_eq!(brute_force_model_count(&cnf![[1, 2]]).unwrap(), 3);
    }

    #[test]
    fn limit_is_enforced() {
        let f = cnf![[1, 2, 3, 4]];
        assert!(matches!(
            brute_force_sat_with_limit(&f, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
