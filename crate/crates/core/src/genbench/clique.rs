use std::collections::BTreeSet;

use super::clause;
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, Var};

/// A graph whose vertices (identified with variables) are split into parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteGraph {
    pub parts: Vec<Vec<Var>>,
    edges: BTreeSet<(Var, Var)>,
}

impl PartiteGraph {
    pub fn new(parts: Vec<Vec<Var>>, edges: impl IntoIterator<Item = (Var, Var)>) -> Result<PartiteGraph> {
        if parts.iter().any(Vec::is_empty) {
            return Err(Error::InvalidParameters("every part needs a vertex".into()));
        }
        let all: Vec<Var> = parts.iter().flatten().copied().collect();
        let distinct: BTreeSet<Var> = all.iter().copied().collect();
        if distinct.len() != all.len() {
            return Err(Error::InvalidParameters("parts must be disjoint".into()));
        }
        let edges: BTreeSet<(Var, Var)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        if let Some(&(u, v)) = edges.iter().find(|(u, v)| !distinct.contains(u) || !distinct.contains(v) || u == v) {
            return Err(Error::InvalidParameters(format!("edge {u}–{v} is not between vertices")));
        }
        Ok(PartiteGraph { parts, edges })
    }

    pub fn vertices(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.parts.iter().flatten().copied().collect();
        v.sort();
        v
    }

    pub fn has_edge(&self, u: Var, v: Var) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Whether some choice of one vertex per part is pairwise adjacent.
    pub fn has_partitioned_clique(&self) -> bool {
        fn extend(g: &PartiteGraph, i: usize, chosen: &mut Vec<Var>) -> bool {
            if i == g.parts.len() {
                return true;
            }
            for &v in &g.parts[i] {
                if chosen.iter().all(|&u| g.has_edge(u, v)) {
                    chosen.push(v);
                    if extend(g, i + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        extend(self, 0, &mut Vec::new())
    }
}

/// `{¬u, ¬v}` for all distinct non-adjacent vertices, and the clause `V_i`
/// for every part. Satisfiable iff the graph has a clique with one vertex
/// per part.
pub fn pclique_instance(h: &PartiteGraph) -> CnfFormula {
    let vertices = h.vertices();
    let mut clauses = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if !h.has_edge(u, v) {
                clauses.push(clause([u.neg(), v.neg()]));
            }
        }
    }
    for part in &h.parts {
        clauses.push(clause(part.iter().map(|v| v.pos())));
    }
    CnfFormula::from_clauses(clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;
    use crate::formula::brute_force_sat;

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    #[test]
    fn two_parts() {
        let h = PartiteGraph::new(vec![vec![v(1)], vec![v(2)]], [(v(1), v(2))]).unwrap();
        assert_eq!(pclique_instance(&h), cnf![[1], [2]]);
        assert!(h.has_partitioned_clique());
        let h = PartiteGraph::new(vec![vec![v(1)], vec![v(2)]], []).unwrap();
        let f = pclique_instance(&h);
        assert_eq!(f, cnf![[1], [2], [-1, -2]]);
        assert!(!brute_force_sat(&f).unwrap().is_sat());
    }

    #[test]
    fn triangle_free_three_parts() {
        // a path 1–2–3 across three parts has no triangle
        let h = PartiteGraph::new(vec![vec![v(1)], vec![v(2)], vec![v(3)]], [(v(1), v(2)), (v(2), v(3))]).unwrap();
        assert!(!h.has_partitioned_clique());
        assert!(!brute_force_sat(&pclique_instance(&h)).unwrap().is_sat());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PartiteGraph::new(vec![vec![]], []).is_err());
        assert!(PartiteGraph::new(vec![vec![v(1)], vec![v(1)]], []).is_err());
        assert!(PartiteGraph::new(vec![vec![v(1)]], [(v(1), v(2))]).is_err());
    }
}
