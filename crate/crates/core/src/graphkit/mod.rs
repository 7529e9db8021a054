//! Graphs derived from formulas and the exact engines the detection
//! algorithms reduce to.
//!
//! All engines are exact and deterministic: among all minimum solutions they
//! return the lexicographically least one with respect to vertex (or
//! variable) order. Search is plain bounded branching; the instances met in
//! practice here are small.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::formula::{CnfFormula, Lit, Var};

mod fvs;
mod hitting_set;
mod lemma;
pub(crate) mod lex;
mod two_sat;
mod vertex_cover;

pub use fvs::min_fvs_constrained;
pub use hitting_set::{min_hitting_set, min_hitting_set_3};
pub use lemma::{lemma_graph, MatchedLiteralGraph};
pub use two_sat::two_sat;
pub use vertex_cover::min_vertex_cover;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexTag {
    Variable(Var),
    /// Index into [`CnfFormula::clauses`].
    Clause(usize),
    Literal(Lit),
}

/// A simple undirected graph whose vertices carry a [`VertexTag`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaggedGraph {
    tags: Vec<VertexTag>,
    adj: Vec<BTreeSet<usize>>,
}

impl TaggedGraph {
    pub fn new() -> TaggedGraph {
        TaggedGraph::default()
    }

    pub fn add_vertex(&mut self, tag: VertexTag) -> usize {
        self.tags.push(tag);
        self.adj.push(BTreeSet::new());
        self.tags.len() - 1
    }

    /// Adds the edge `uv`. Loops and repeated edges are ignored; returns
    /// whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    pub fn vertex_count(&self) -> usize {
        self.tags.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn tag(&self, v: usize) -> VertexTag {
        self.tags[v]
    }

    pub fn tags(&self) -> &[VertexTag] {
        &self.tags
    }

    pub fn vertex_of(&self, tag: VertexTag) -> Option<usize> {
        self.tags.iter().position(|t| *t == tag)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|ns| ns.iter().copied().collect()).collect()
    }

    /// Whether the subgraph induced by the vertices not in `removed` is
    /// acyclic.
    pub fn is_forest_without(&self, removed: &BTreeSet<usize>) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] || removed.contains(&root) {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([(root, usize::MAX)]);
            while let Some((u, parent)) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if v == parent || removed.contains(&v) {
                        continue;
                    }
                    if seen[v] {
                        return false;
                    }
                    seen[v] = true;
                    queue.push_back((v, u));
                }
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        self.is_forest_without(&BTreeSet::new())
    }

    /// Vertices of a shortest cycle, or `None` for a forest. BFS from every
    /// root; the first non-tree edge closes the shortest cycle through it.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut best: Option<Vec<usize>> = None;
        for root in 0..n {
            let mut parent = vec![usize::MAX; n];
            let mut depth = vec![usize::MAX; n];
            parent[root] = root;
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if parent[u] == v {
                        continue;
                    }
                    if depth[v] != usize::MAX {
                        let len = depth[u] + depth[v] + 1;
                        if best.as_ref().is_none_or(|b| len < b.len()) {
                            let mut cycle = Vec::new();
                            for mut w in [u, v] {
                                cycle.push(w);
                                while parent[w] != w {
                                    w = parent[w];
                                    cycle.push(w);
                                }
                            }
                            cycle.sort_unstable();
                            cycle.dedup();
                            best = Some(cycle);
                        }
                        break 'bfs;
                    }
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        best
    }

    /// Adjacency dump in DOT syntax, for debugging.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (v, tag) in self.tags.iter().enumerate() {
            let label = match tag {
                VertexTag::Variable(x) => format!("x{x}"),
                VertexTag::Clause(i) => format!("C{i}"),
                VertexTag::Literal(l) => format!("{l}"),
            };
            let _ = writeln!(out, "  {v} [label=\"{label}\"];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// The bipartite variable/clause incidence graph. Variable vertices come
/// first in ascending order, followed by the clauses in canonical order.
pub fn incidence_graph(f: &CnfFormula) -> TaggedGraph {
    let mut g = TaggedGraph::new();
    let vars: Vec<Var> = f.vars().into_iter().collect();
    for &x in &vars {
        g.add_vertex(VertexTag::Variable(x));
    }
    for (i, c) in f.clauses().iter().enumerate() {
        let cv = g.add_vertex(VertexTag::Clause(i));
        for x in c.vars() {
            let xv = vars.binary_search(&x).expect("clause variable");
            g.add_edge(xv, cv);
        }
    }
    g
}

/// Vertices `var(F)`; `xy` is an edge iff some clause contains both `x` and
/// `y` positively.
pub fn positive_primal_graph(f: &CnfFormula) -> TaggedGraph {
    primal_graph(f, true)
}

/// Vertices `var(F)`; `xy` is an edge iff some clause contains both `¬x`
/// and `¬y`.
pub fn negative_primal_graph(f: &CnfFormula) -> TaggedGraph {
    primal_graph(f, false)
}

fn primal_graph(f: &CnfFormula, polarity: bool) -> TaggedGraph {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let mut g = TaggedGraph::new();
    for &x in &vars {
        g.add_vertex(VertexTag::Variable(x));
    }
    for c in f.clauses() {
        let same: Vec<usize> = c
            .lits()
            .iter()
            .filter(|l| l.polarity() == polarity)
            .map(|l| vars.binary_search(&l.var()).expect("clause variable"))
            .collect();
        for (i, &u) in same.iter().enumerate() {
            for &v in &same[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}
