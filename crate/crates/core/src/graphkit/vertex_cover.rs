use super::lex::lex_least;
use super::TaggedGraph;
use crate::error::{Error, Result};

/// Minimum vertex cover using only vertices accepted by `deletable`.
///
/// Returns the lexicographically least minimum cover (sorted vertex ids), or
/// [`Error::NoneWithin`] if every cover needs more than `k` vertices or an
/// edge has no deletable endpoint.
pub fn min_vertex_cover(
    g: &TaggedGraph,
    k: usize,
    deletable: impl Fn(usize) -> bool,
) -> Result<Vec<usize>> {
    let adj = g.adjacency();
    let n = adj.len();
    let base: Vec<bool> = (0..n).map(&deletable).collect();

    let decide = |forced_in: &[usize], forced_out: &[usize], budget: usize| -> bool {
        if forced_in.len() > budget {
            return false;
        }
        let mut inst = Instance {
            adj: &adj,
            deletable: base.clone(),
            removed: vec![false; n],
        };
        for &v in forced_in {
            inst.removed[v] = true;
        }
        for &v in forced_out {
            inst.deletable[v] = false;
        }
        inst.search(budget - forced_in.len())
    };

    let Some(size) = (0..=k.min(n)).find(|&b| decide(&[], &[], b)) else {
        return Err(Error::NoneWithin(k));
    };
    let candidates: Vec<usize> = (0..n).filter(|&v| base[v]).collect();
    Ok(lex_least(&candidates, size, |fin, fout| decide(fin, fout, size)))
}

struct Instance<'a> {
    adj: &'a [Vec<usize>],
    deletable: Vec<bool>,
    removed: Vec<bool>,
}

impl Instance<'_> {
    fn alive_neighbors(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&u| !self.removed[u]).collect()
    }

    /// Size of a greedy maximal matching: a lower bound on any cover.
    fn matching_bound(&self) -> usize {
        let mut used = vec![false; self.adj.len()];
        let mut size = 0;
        for u in 0..self.adj.len() {
            if self.removed[u] || used[u] {
                continue;
            }
            if let Some(&v) = self.adj[u].iter().find(|&&v| !self.removed[v] && !used[v]) {
                used[u] = true;
                used[v] = true;
                size += 1;
            }
        }
        size
    }

    fn take(&mut self, vs: &[usize], budget: usize) -> bool {
        if vs.len() > budget || vs.iter().any(|&v| !self.deletable[v]) {
            return false;
        }
        for &v in vs {
            self.removed[v] = true;
        }
        let ok = self.search(budget - vs.len());
        for &v in vs {
            self.removed[v] = false;
        }
        ok
    }

    fn search(&mut self, budget: usize) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.adj.len() {
            if self.removed[v] {
                continue;
            }
            let d = self.alive_neighbors(v).len();
            if d == 0 {
                continue;
            }
            // a non-deletable endpoint forces the other side
            if d == 1 || !self.deletable[v] {
                best = Some((v, usize::MAX));
                break;
            }
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        let Some((v, _)) = best else {
            return true;
        };
        if budget == 0 || self.matching_bound() > budget {
            return false;
        }
        let neighbors = self.alive_neighbors(v);
        if !self.deletable[v] {
            return self.take(&neighbors, budget);
        }
        if neighbors.len() == 1 && self.deletable[neighbors[0]] {
            // degree one: the neighbour covers at least as much as v
            return self.take(&neighbors, budget);
        }
        if self.take(&[v], budget) {
            return true;
        }
        self.take(&neighbors, budget)
    }
}
