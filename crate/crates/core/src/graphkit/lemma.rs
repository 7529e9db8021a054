use std::collections::BTreeSet;

use super::{TaggedGraph, VertexTag};
use crate::formula::{CnfFormula, Lit, Var};

/// The literal graph of a formula together with its distinguished perfect
/// matching `M = { x^0 x^1 : x ∈ var(F) }`.
///
/// Vertex `2i` is `x_i^0` and vertex `2i + 1` is `x_i^1`, where `x_i` is the
/// i-th variable of `var(F)` in ascending order.
#[derive(Debug, Clone)]
pub struct MatchedLiteralGraph {
    pub graph: TaggedGraph,
    pub matching: Vec<(usize, usize)>,
    vars: Vec<Var>,
}

impl MatchedLiteralGraph {
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn vertex_of(&self, lit: Lit) -> usize {
        2 * self.vars.binary_search(&lit.var()).expect("variable of F") + lit.polarity() as usize
    }

    pub fn lit_of(&self, vertex: usize) -> Lit {
        match self.graph.tag(vertex) {
            VertexTag::Literal(l) => l,
            _ => unreachable!("literal graph"),
        }
    }

    /// Edges outside the matching (literal co-occurrence edges).
    pub fn cooccurrence_edges(&self) -> Vec<(usize, usize)> {
        let m: BTreeSet<(usize, usize)> = self.matching.iter().copied().collect();
        self.graph.edges().filter(|e| !m.contains(e)).collect()
    }
}

/// Vertices: all literals over `var(F)`. Edges: the matching `x^0 x^1`, plus
/// `x^ε y^δ` whenever both literals occur together in a clause.
pub fn lemma_graph(f: &CnfFormula) -> MatchedLiteralGraph {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let mut graph = TaggedGraph::new();
    let mut matching = Vec::with_capacity(vars.len());
    for &x in &vars {
        let neg = graph.add_vertex(VertexTag::Literal(x.neg()));
        let pos = graph.add_vertex(VertexTag::Literal(x.pos()));
        graph.add_edge(neg, pos);
        matching.push((neg, pos));
    }
    let mut g = MatchedLiteralGraph { graph, matching, vars };
    for c in f.clauses() {
        let lits = c.lits();
        for (i, &a) in lits.iter().enumerate() {
            for &b in &lits[i + 1..] {
                let (u, v) = (g.vertex_of(a), g.vertex_of(b));
                g.graph.add_edge(u, v);
            }
        }
    }
    g
}
