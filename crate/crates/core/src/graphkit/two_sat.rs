use crate::error::{Error, Result};
use crate::formula::{Assignment, CnfFormula, SatResult, Var};

/// Decides a formula of width at most two through the strongly connected
/// components of its implication graph.
///
/// The model sets `x` to 1 iff the component of `x` comes after the
/// component of `¬x` in topological order.
pub fn two_sat(f: &CnfFormula) -> Result<SatResult> {
    if let Some(c) = f.clauses().iter().find(|c| c.len() > 2) {
        return Err(Error::WidthExceeded { width: c.len(), limit: 2 });
    }
    if f.contains_empty_clause() {
        return Ok(SatResult::Unsat);
    }
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let node = |lit: crate::formula::Lit| {
        2 * vars.binary_search(&lit.var()).expect("clause variable") + lit.polarity() as usize
    };
    let n = 2 * vars.len();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    let mut implies = |a: usize, b: usize| {
        out[a].push(b);
        inc[b].push(a);
    };
    for c in f.clauses() {
        match c.lits() {
            [a] => implies(node(!*a), node(*a)),
            [a, b] => {
                implies(node(!*a), node(*b));
                implies(node(!*b), node(*a));
            }
            _ => unreachable!("width checked above"),
        }
    }

    let comp = kosaraju(&out, &inc);
    let mut model = Assignment::new();
    for (i, &x) in vars.iter().enumerate() {
        let (neg, pos) = (comp[2 * i], comp[2 * i + 1]);
        if neg == pos {
            return Ok(SatResult::Unsat);
        }
        model.insert(x, pos > neg);
    }
    Ok(SatResult::Sat(model))
}

/// Component ids numbered in topological order of the condensation.
fn kosaraju(out: &[Vec<usize>], inc: &[Vec<usize>]) -> Vec<usize> {
    let n = out.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&v) = out[u].get(*next) {
                *next += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }

    let mut comp = vec![usize::MAX; n];
    let mut next_id = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = next_id;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &inc[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next_id;
                    stack.push(v);
                }
            }
        }
        next_id += 1;
    }
    comp
}
