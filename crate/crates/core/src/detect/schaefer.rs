use std::collections::BTreeSet;

use itertools::Itertools;

use super::{Algorithm, BackdoorResult, Certificate};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, Var};
use crate::graphkit::{min_hitting_set_3, min_vertex_cover, negative_primal_graph, positive_primal_graph, VertexTag};
use crate::islands::{is_member, BaseClass, ClassId};

/// Strong backdoors for the five Schaefer classes. These coincide with the
/// deletion backdoors, so the same routine serves both kinds.
///
/// * Horn: vertex covers of the positive primal graph (dually for
///   HornMinus).
/// * 2CNF: hitting sets of all 3-element subsets of clause variable sets.
/// * 0-Val / 1-Val: since the empty clause is neither 0- nor 1-valid, a
///   reduct `F[τ]` keeps a purely positive clause whenever `τ` falsifies the
///   assigned part of one. The only strong backdoor candidate is therefore
///   `∅`, available exactly when `F` is already in the class.
pub fn detect_strong_schaefer(f: &CnfFormula, class: ClassId, k: usize) -> Result<BackdoorResult> {
    let found = |variables: BTreeSet<Var>, algorithm| BackdoorResult {
        variables,
        certificate: Certificate::None,
        algorithm,
    };
    match class {
        ClassId::Horn | ClassId::HornMinus => {
            let g = if class == ClassId::Horn { positive_primal_graph(f) } else { negative_primal_graph(f) };
            let cover = min_vertex_cover(&g, k, |_| true)?;
            let vars = cover
                .into_iter()
                .map(|v| match g.tag(v) {
                    VertexTag::Variable(x) => x,
                    _ => unreachable!("primal graph"),
                })
                .collect();
            Ok(found(vars, Algorithm::StrongVertexCover))
        }
        ClassId::TwoCnf => {
            let triples: BTreeSet<BTreeSet<Var>> = f
                .clauses()
                .iter()
                .filter(|c| c.len() >= 3)
                .flat_map(|c| c.vars().combinations(3).map(|t| t.into_iter().collect::<BTreeSet<Var>>()))
                .collect();
            let triples: Vec<BTreeSet<Var>> = triples.into_iter().collect();
            Ok(found(min_hitting_set_3(&triples, k)?, Algorithm::StrongHittingSet))
        }
        ClassId::ZeroVal | ClassId::OneVal => {
            if is_member(BaseClass::plain(class), f) {
                Ok(found(BTreeSet::new(), Algorithm::StrongValidity))
            } else {
                Err(Error::NoneWithin(k))
            }
        }
        _ => Err(Error::Unsupported(format!("{} is not a Schaefer class", class.token()))),
    }
}
