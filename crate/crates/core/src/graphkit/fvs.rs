use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::lex::lex_least;
use super::TaggedGraph;
use crate::error::{Error, Result};

/// Minimum feedback vertex set restricted to `deletable` vertices.
///
/// Branches on the vertices of a shortest cycle after exhaustively removing
/// vertices of degree at most one and suppressing non-deletable vertices of
/// degree two (which may create parallel edges and loops). Returns
/// [`Error::Infeasible`] if some cycle has no deletable vertex.
pub fn min_fvs_constrained(
    g: &TaggedGraph,
    deletable: impl Fn(usize) -> bool,
    k: usize,
) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let base: Vec<bool> = (0..n).map(&deletable).collect();
    let fixed: BTreeSet<usize> = (0..n).filter(|&v| base[v]).collect();
    if !g.is_forest_without(&fixed) {
        return Err(Error::Infeasible);
    }

    let decide = |forced_in: &[usize], forced_out: &[usize], budget: usize| -> bool {
        if forced_in.len() > budget {
            return false;
        }
        let mut m = MultiGraph::from(g);
        for &v in forced_in {
            m.remove(v);
        }
        let mut del = base.clone();
        for &v in forced_out {
            del[v] = false;
        }
        m.search(&del, budget - forced_in.len())
    };

    let Some(size) = (0..=k.min(n)).find(|&b| decide(&[], &[], b)) else {
        return Err(Error::NoneWithin(k));
    };
    let candidates: Vec<usize> = (0..n).filter(|&v| base[v]).collect();
    Ok(lex_least(&candidates, size, |fin, fout| decide(fin, fout, size)))
}

/// Undirected multigraph with loops; `adj[u][v]` is the edge multiplicity
/// (a loop at `u` is stored once under `adj[u][u]`).
#[derive(Clone)]
struct MultiGraph {
    adj: BTreeMap<usize, BTreeMap<usize, usize>>,
}

impl From<&TaggedGraph> for MultiGraph {
    fn from(g: &TaggedGraph) -> Self {
        let adj = (0..g.vertex_count())
            .map(|u| (u, g.neighbors(u).map(|v| (v, 1)).collect()))
            .collect();
        MultiGraph { adj }
    }
}

impl MultiGraph {
    fn degree(&self, v: usize) -> usize {
        self.adj[&v]
            .iter()
            .map(|(&u, &m)| if u == v { 2 * m } else { m })
            .sum()
    }

    fn remove(&mut self, v: usize) {
        if let Some(ns) = self.adj.remove(&v) {
            for u in ns.keys() {
                if let Some(nu) = self.adj.get_mut(u) {
                    nu.remove(&v);
                }
            }
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        *self.adj.entry(u).or_default().entry(v).or_default() += 1;
        if u != v {
            *self.adj.entry(v).or_default().entry(u).or_default() += 1;
        }
    }

    fn reduce(&mut self, deletable: &[bool]) {
        loop {
            let mut changed = false;
            let vertices: Vec<usize> = self.adj.keys().copied().collect();
            for v in vertices {
                if !self.adj.contains_key(&v) {
                    continue;
                }
                let d = self.degree(v);
                if d <= 1 {
                    self.remove(v);
                    changed = true;
                } else if d == 2 && !deletable[v] && !self.adj[&v].contains_key(&v) {
                    let ends: Vec<usize> = self.adj[&v]
                        .iter()
                        .flat_map(|(&u, &m)| std::iter::repeat_n(u, m))
                        .collect();
                    self.remove(v);
                    self.add_edge(ends[0], ends[1]);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Vertex set of a shortest cycle (loops, then parallel edges, then BFS).
    fn shortest_cycle(&self) -> Option<Vec<usize>> {
        if let Some(v) = self.adj.iter().find(|(v, ns)| ns.contains_key(v)).map(|(v, _)| *v) {
            return Some(vec![v]);
        }
        for (&u, ns) in &self.adj {
            if let Some((&v, _)) = ns.iter().find(|(_, &m)| m >= 2) {
                return Some(vec![u, v]);
            }
        }
        let mut best: Option<Vec<usize>> = None;
        for &root in self.adj.keys() {
            let mut parent: BTreeMap<usize, usize> = BTreeMap::from([(root, root)]);
            let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &w in self.adj[&u].keys() {
                    if parent[&u] == w {
                        continue;
                    }
                    if let Some(&dw) = depth.get(&w) {
                        let len = depth[&u] + dw + 1;
                        if best.as_ref().is_none_or(|b| len < b.len()) {
                            let mut cycle = path_to_root(&parent, u);
                            cycle.extend(path_to_root(&parent, w));
                            cycle.sort_unstable();
                            cycle.dedup();
                            best = Some(cycle);
                        }
                        break 'bfs;
                    }
                    parent.insert(w, u);
                    depth.insert(w, depth[&u] + 1);
                    queue.push_back(w);
                }
            }
        }
        best
    }

    fn search(&mut self, deletable: &[bool], budget: usize) -> bool {
        self.reduce(deletable);
        let Some(cycle) = self.shortest_cycle() else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &v in cycle.iter().filter(|&&v| deletable[v]) {
            let mut next = self.clone();
            next.remove(v);
            if next.search(deletable, budget - 1) {
                return true;
            }
        }
        false
    }
}

fn path_to_root(parent: &BTreeMap<usize, usize>, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while parent[&v] != v {
        v = parent[&v];
        path.push(v);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Var;
    use crate::graphkit::VertexTag;

    fn graph(n: usize, edges: &[(usize, usize)]) -> TaggedGraph {
        let mut g = TaggedGraph::new();
        for i in 0..n {
            g.add_vertex(VertexTag::Variable(Var::new(i as u32 + 1)));
        }
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    fn brute(g: &TaggedGraph, deletable: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let n = g.vertex_count();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.iter().any(|&v| !deletable(v)) {
                continue;
            }
            if g.is_forest_without(&set.iter().copied().collect()) {
                let better = best.as_ref().is_none_or(|b| (set.len(), &set) < (b.len(), b));
                if better {
                    best = Some(set);
                }
            }
        }
        best
    }

    #[test]
    fn forest_needs_nothing() {
        let g = graph(4, &[(0, 1), (1, 2), (1, 3)]);
        assert!(min_fvs_constrained(&g, |_| true, 0).unwrap().is_empty());
    }

    #[test]
    fn four_cycle_with_two_deletable() {
        // x – C1 – y – C2 – x with only x (0) and y (2) deletable
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(min_fvs_constrained(&g, |v| v % 2 == 0, 4).unwrap(), vec![0]);
    }

    #[test]
    fn two_disjoint_cycles() {
        let g = graph(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]);
        assert_eq!(min_fvs_constrained(&g, |_| true, 8).unwrap(), vec![0, 4]);
        assert_eq!(min_fvs_constrained(&g, |_| true, 1), Err(Error::NoneWithin(1)));
    }

    #[test]
    fn infeasible_when_a_cycle_is_fixed() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(min_fvs_constrained(&g, |_| false, 3), Err(Error::Infeasible));
    }

    #[test]
    fn matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.random_range(1..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = graph(n, &edges);
            let parity = rng.random_range(0..3);
            let deletable = move |v: usize| parity == 2 || v % 2 == parity;
            let expected = brute(&g, &deletable);
            let got = min_fvs_constrained(&g, deletable, n).ok();
            assert_eq!(got, expected, "edges {edges:?}, parity {parity}");
        }
    }
}
