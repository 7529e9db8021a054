//! CNF formulas with set semantics, partial truth assignments and the three
//! structural operators every backdoor notion is built on: the reduction
//! `F[τ]`, variable deletion `F - B` and polarity renaming `r_X(F)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod dimacs;
mod oracle;

pub use oracle::{
    brute_force_count, brute_force_model_count, brute_force_sat, brute_force_sat_with_limit,
    BRUTE_FORCE_VAR_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause contains both {0} and its negation")]
    Tautology(Var),
    #[error("0 is not a literal")]
    ZeroLiteral,
    #[error("variable index {0} out of range")]
    VariableOutOfRange(i64),
    #[error("weight {weight} of variable {var} is outside [0, 1]")]
    WeightOutOfRange { var: Var, weight: String },
}

/// A propositional variable, identified by a positive integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(u32);

impl Var {
    /// Panics if `id` is zero.
    pub fn new(id: u32) -> Var {
        assert!(id >= 1, "variable ids start at 1");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn lit(self, polarity: bool) -> Lit {
        Lit((self.0 << 1) | polarity as u32)
    }

    pub fn pos(self) -> Lit {
        self.lit(true)
    }

    pub fn neg(self) -> Lit {
        self.lit(false)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal `x^ε`: polarity `true` is the positive literal `x = x^1`,
/// `false` the negated literal `¬x = x^0`.
///
/// Literals order by variable first, then `x^0 < x^1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, polarity: bool) -> Lit {
        var.lit(polarity)
    }

    pub fn from_dimacs(value: i64) -> Result<Lit, FormulaError> {
        if value == 0 {
            return Err(FormulaError::ZeroLiteral);
        }
        let id = u32::try_from(value.unsigned_abs())
            .ok()
            .filter(|id| *id < (1 << 30))
            .ok_or(FormulaError::VariableOutOfRange(value))?;
        Ok(Var::new(id).lit(value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let id = self.var().id() as i64;
        if self.polarity() {
            id
        } else {
            -id
        }
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn polarity(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_positive(self) -> bool {
        self.polarity()
    }

    pub fn is_negative(self) -> bool {
        !self.polarity()
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Whether the literal is true when its variable takes `value`.
    pub fn is_true_under(self, value: bool) -> bool {
        self.polarity() == value
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.negate()
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl Serialize for Lit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_dimacs())
    }
}

impl Serialize for Clause {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Serialize for CnfFormula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.clauses.serialize(s)
    }
}

/// A clause: a sorted set of literals without a complementary pair. May be
/// empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(Vec<Lit>);

impl Clause {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause, FormulaError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(pair) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(FormulaError::Tautology(pair[0].var()));
        }
        Ok(Clause(lits))
    }

    /// Builds a clause from literals already known to be sorted, deduplicated
    /// and free of complementary pairs.
    fn from_sorted(lits: Vec<Lit>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause(lits)
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn from_ints(lits: &[i64]) -> Result<Clause, FormulaError> {
        let lits = lits
            .iter()
            .map(|&l| Lit::from_dimacs(l))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    /// The literal over `var`, if any.
    pub fn lit_of(&self, var: Var) -> Option<Lit> {
        self.0
            .binary_search_by_key(&var, |l| l.var())
            .ok()
            .map(|i| self.0[i])
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var())
    }

    pub fn positive_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.0.len() - self.positive_count()
    }

    /// `C ∩ ¬C' ≠ ∅`.
    pub fn clashes_with(&self, other: &Clause) -> bool {
        self.0.iter().any(|l| other.contains(l.negate()))
    }

    /// `C ∩ C' ≠ ∅`.
    pub fn overlaps_with(&self, other: &Clause) -> bool {
        self.0.iter().any(|l| other.contains(*l))
    }

    pub fn shares_var_with(&self, other: &Clause) -> bool {
        self.0.iter().any(|l| other.lit_of(l.var()).is_some())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A CNF formula: a set of clauses.
///
/// Clauses are kept sorted and deduplicated, so structurally equal formulas
/// compare and hash equal. This doubles as the canonical form used for
/// memoisation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new() -> CnfFormula {
        CnfFormula::default()
    }

    pub fn from_clauses<I: IntoIterator<Item = Clause>>(clauses: I) -> CnfFormula {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_unstable();
        clauses.dedup();
        CnfFormula { clauses }
    }

    pub fn from_ints(clauses: Vec<Vec<i64>>) -> Result<CnfFormula, FormulaError> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_ints(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CnfFormula::from_clauses(clauses))
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains_empty_clause(&self) -> bool {
        // the empty clause sorts first
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.binary_search(clause).is_ok()
    }

    /// `var(F)`, by occurrence.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.vars().len()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).max()
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    /// `F[τ] = { C ∖ false(τ) : C ∈ F, C ∩ true(τ) = ∅ }`.
    ///
    /// Variables bound by `tau` that do not occur in `F` are ignored.
    pub fn reduce(&self, tau: &Assignment) -> CnfFormula {
        if tau.is_empty() {
            return self.clone();
        }
        let clauses = self.clauses.iter().filter_map(|c| {
            let mut kept = Vec::with_capacity(c.len());
            for &l in c.lits() {
                match tau.get(l.var()) {
                    Some(v) if l.is_true_under(v) => return None,
                    Some(_) => {}
                    None => kept.push(l),
                }
            }
            Some(Clause::from_sorted(kept))
        });
        CnfFormula::from_clauses(clauses)
    }

    /// `F[x = value]`.
    pub fn assign(&self, var: Var, value: bool) -> CnfFormula {
        self.reduce(&Assignment::single(var, value))
    }

    /// `F - B`: every clause stripped of its literals over `B`, duplicates
    /// merged.
    pub fn delete_vars(&self, vars: &BTreeSet<Var>) -> CnfFormula {
        if vars.is_empty() {
            return self.clone();
        }
        let clauses = self.clauses.iter().map(|c| {
            Clause::from_sorted(
                c.lits()
                    .iter()
                    .copied()
                    .filter(|l| !vars.contains(&l.var()))
                    .collect(),
            )
        });
        CnfFormula::from_clauses(clauses)
    }

    /// `r_X(F)`: flips the polarity of every literal over `X`.
    pub fn rename(&self, vars: &BTreeSet<Var>) -> CnfFormula {
        if vars.is_empty() {
            return self.clone();
        }
        let clauses = self.clauses.iter().map(|c| {
            let mut lits: Vec<Lit> = c
                .lits()
                .iter()
                .map(|&l| if vars.contains(&l.var()) { !l } else { l })
                .collect();
            lits.sort_unstable();
            Clause::from_sorted(lits)
        });
        CnfFormula::from_clauses(clauses)
    }

    pub fn union(&self, other: &CnfFormula) -> CnfFormula {
        CnfFormula::from_clauses(self.clauses.iter().chain(other.clauses.iter()).cloned())
    }

    pub fn with_clause(&self, clause: Clause) -> CnfFormula {
        CnfFormula::from_clauses(self.clauses.iter().cloned().chain(std::iter::once(clause)))
    }

    /// Whether `tau` satisfies every clause, i.e. `F[τ] = ∅`.
    pub fn is_satisfied_by(&self, tau: &Assignment) -> bool {
        self.clauses.iter().all(|c| {
            c.lits()
                .iter()
                .any(|l| tau.get(l.var()).is_some_and(|v| l.is_true_under(v)))
        })
    }
}

impl FromIterator<Clause> for CnfFormula {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        CnfFormula::from_clauses(iter)
    }
}

impl fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A partial truth assignment `τ: X → {0, 1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn single(var: Var, value: bool) -> Assignment {
        Assignment(BTreeMap::from([(var, value)]))
    }

    /// The assignment to `vars` (in ascending order) whose i-th variable
    /// takes bit i of `bits`.
    pub fn from_bits(vars: &[Var], bits: u64) -> Assignment {
        Assignment(
            vars.iter()
                .enumerate()
                .map(|(i, &v)| (v, bits >> i & 1 == 1))
                .collect(),
        )
    }

    /// All assignments in `2^vars`, in binary counting order.
    pub fn all_over(vars: &BTreeSet<Var>) -> impl Iterator<Item = Assignment> {
        let vars: Vec<Var> = vars.iter().copied().collect();
        assert!(vars.len() < 64, "too many variables to enumerate");
        (0..1u64 << vars.len()).map(move |bits| Assignment::from_bits(&vars, bits))
    }

    pub fn constant(vars: &BTreeSet<Var>, value: bool) -> Assignment {
        Assignment(vars.iter().map(|&v| (v, value)).collect())
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn insert(&mut self, var: Var, value: bool) -> Option<bool> {
        self.0.insert(var, value)
    }

    pub fn with(&self, var: Var, value: bool) -> Assignment {
        let mut next = self.clone();
        next.insert(var, value);
        next
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<Var> {
        self.0.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }

    /// `true(τ)`.
    pub fn true_lits(&self) -> BTreeSet<Lit> {
        self.iter().map(|(v, b)| v.lit(b)).collect()
    }

    /// `false(τ)`.
    pub fn false_lits(&self) -> BTreeSet<Lit> {
        self.iter().map(|(v, b)| v.lit(!b)).collect()
    }

    /// Union with `other`; bindings of `other` win on conflicts.
    pub fn extended(&self, other: &Assignment) -> Assignment {
        let mut next = self.clone();
        next.0.extend(other.iter());
        next
    }

    pub fn restricted(&self, vars: &BTreeSet<Var>) -> Assignment {
        Assignment(
            self.iter()
                .filter(|(v, _)| vars.contains(v))
                .collect(),
        )
    }

    pub fn flipped(&self, vars: &BTreeSet<Var>) -> Assignment {
        Assignment(
            self.iter()
                .map(|(v, b)| (v, if vars.contains(&v) { !b } else { b }))
                .collect(),
        )
    }

    /// Binds every unbound variable of `vars` to `value`.
    pub fn completed(&self, vars: &BTreeSet<Var>, value: bool) -> Assignment {
        let mut next = self.clone();
        for &v in vars {
            next.0.entry(v).or_insert(value);
        }
        next
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(v, b)| (v, b as u8)))
            .finish()
    }
}

/// The true literals in DIMACS notation, e.g. `{1, -2}`.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, value)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.lit(value))?;
        }
        write!(f, "}}")
    }
}

/// Outcome of a satisfiability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Assignment),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SatResult::Sat(m) => Some(m),
            SatResult::Unsat => None,
        }
    }
}

/// Exact rational weights `w(x) ∈ [0, 1]` of positive literals, with
/// `w(¬x) = 1 - w(x)`. Unlisted variables take the default weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weighting {
    weights: BTreeMap<Var, BigRational>,
    default: BigRational,
}

impl Default for Weighting {
    fn default() -> Self {
        Weighting::uniform()
    }
}

impl Weighting {
    /// Every variable weighs 1/2.
    pub fn uniform() -> Weighting {
        Weighting {
            weights: BTreeMap::new(),
            default: BigRational::new(BigInt::one(), BigInt::from(2)),
        }
    }

    pub fn set(&mut self, var: Var, weight: BigRational) -> Result<(), FormulaError> {
        if weight < BigRational::zero() || weight > BigRational::one() {
            return Err(FormulaError::WeightOutOfRange {
                var,
                weight: weight.to_string(),
            });
        }
        self.weights.insert(var, weight);
        Ok(())
    }

    pub fn with(mut self, var: Var, numer: i64, denom: i64) -> Result<Weighting, FormulaError> {
        self.set(var, BigRational::new(numer.into(), denom.into()))?;
        Ok(self)
    }

    pub fn var_weight(&self, var: Var) -> &BigRational {
        self.weights.get(&var).unwrap_or(&self.default)
    }

    pub fn lit_weight(&self, lit: Lit) -> BigRational {
        let w = self.var_weight(lit.var());
        if lit.is_positive() {
            w.clone()
        } else {
            BigRational::one() - w
        }
    }

    /// `w(τ) = ∏ w(x^τ(x))`.
    pub fn assignment_weight(&self, tau: &Assignment) -> BigRational {
        tau.iter()
            .map(|(v, b)| self.lit_weight(v.lit(b)))
            .fold(BigRational::one(), |acc, w| acc * w)
    }

    pub fn listed(&self) -> impl Iterator<Item = (Var, &BigRational)> {
        self.weights.iter().map(|(&v, w)| (v, w))
    }
}
