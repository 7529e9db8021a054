//! Backdoor sets for propositional satisfiability.
//!
//! A backdoor set is a set of variables of a CNF formula such that fixing
//! (or deleting) those variables moves the formula into a polynomial-time
//! base class. The crate is organised along the life cycle of a backdoor:
//!
//! * [`formula`]: the CNF data model, partial assignments, the reduction
//!   `F[τ]`, variable deletion `F - B`, renaming, DIMACS I/O and brute-force
//!   oracles.
//! * [`islands`]: recognition, solving and weighted counting for the base
//!   classes (Horn, anti-Horn, 2CNF, 0-valid, 1-valid, renamable Horn,
//!   acyclic incidence graphs, clustering formulas, and the unit
//!   propagation / pure literal subsolvers).
//! * [`graphkit`]: graph constructions and the exact combinatorial engines
//!   (vertex cover, 3-hitting set, constrained feedback vertex set, 2SAT).
//! * [`detect`]: weak, strong and deletion backdoor detection.
//! * [`evaluate`]: deciding satisfiability and counting weighted models
//!   through a known backdoor, and backdoor trees.
//! * [`genbench`]: generators for gadget formulas, reductions and random
//!   instances.
//!
//! ```
//! use backdoors::cnf;
//! use backdoors::detect::{detect, BackdoorKind, BackdoorQuery, Strategy};
//! use backdoors::islands::{BaseClass, ClassId};
//!
//! let f = cnf![[1, 2], [2, 3]];
//! let query = BackdoorQuery::new(BackdoorKind::Strong, BaseClass::plain(ClassId::Horn), 1);
//! let found = detect(&f, &query, Strategy::Auto).unwrap();
//! assert_eq!(found.variables.len(), 1);
//! ```

pub mod detect;
pub mod error;
pub mod evaluate;
pub mod formula;
pub mod genbench;
pub mod graphkit;
pub mod islands;

pub use error::{Error, Result};
pub use formula::{Assignment, Clause, CnfFormula, Lit, SatResult, Var, Weighting};

/// Builds a [`CnfFormula`] from DIMACS-style integer literals.
///
/// Panics on tautological clauses or a zero literal.
#[macro_export]
macro_rules! cnf {
    ($([$($lit:expr),* $(,)?]),* $(,)?) => {
        $crate::formula::CnfFormula::from_ints(vec![$(vec![$(($lit) as i64),*]),*])
            .expect("valid clause literals")
    };
}
