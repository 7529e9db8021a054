use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{Assignment, CnfFormula, SatResult, Var};
use crate::islands::{is_member, solve, BaseClass};

/// Reducts a tree search may memoize before giving up.
pub const DEFAULT_TREE_BUDGET: usize = 1 << 20;

/// A binary decision tree over backdoor variables. Leaves stand for the
/// reduct under the assignment collected on the way down.
///
/// No variable repeats on a root-to-leaf path; the constructors enforce it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BackdoorTree(Node);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    Branch { var: Var, zero: Box<BackdoorTree>, one: Box<BackdoorTree>, vars: BTreeSet<Var> },
}

impl BackdoorTree {
    pub fn leaf() -> BackdoorTree {
        BackdoorTree(Node::Leaf)
    }

    pub fn branch(var: Var, zero: BackdoorTree, one: BackdoorTree) -> Result<BackdoorTree> {
        if zero.contains(var) || one.contains(var) {
            return Err(Error::InvalidTree(format!("variable {var} repeats on a path")));
        }
        let mut vars: BTreeSet<Var> = zero.vars().union(&one.vars()).copied().collect();
        vars.insert(var);
        Ok(BackdoorTree(Node::Branch { var, zero: Box::new(zero), one: Box::new(one), vars }))
    }

    /// The full tree branching on `vars` in the given order.
    pub fn complete(vars: &[Var]) -> Result<BackdoorTree> {
        match vars.split_first() {
            None => Ok(BackdoorTree::leaf()),
            Some((&v, rest)) => BackdoorTree::branch(v, BackdoorTree::complete(rest)?, BackdoorTree::complete(rest)?),
        }
    }

    /// Branches on `vars` in order; the `0`-child of each node is a leaf
    /// and the last node has two leaves.
    pub fn caterpillar(vars: &[Var]) -> Result<BackdoorTree> {
        vars.iter().rev().try_fold(BackdoorTree::leaf(), |acc, &v| BackdoorTree::branch(v, BackdoorTree::leaf(), acc))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.0, Node::Leaf)
    }

    /// The branching variable with its `0`- and `1`-subtrees.
    pub fn split(&self) -> Option<(Var, &BackdoorTree, &BackdoorTree)> {
        match &self.0 {
            Node::Leaf => None,
            Node::Branch { var, zero, one, .. } => Some((*var, zero, one)),
        }
    }

    pub fn leaves(&self) -> usize {
        match &self.0 {
            Node::Leaf => 1,
            Node::Branch { zero, one, .. } => zero.leaves() + one.leaves(),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.0 {
            Node::Leaf => 0,
            Node::Branch { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    /// `var(T)`, the variables of the internal nodes.
    pub fn vars(&self) -> BTreeSet<Var> {
        match &self.0 {
            Node::Leaf => BTreeSet::new(),
            Node::Branch { vars, .. } => vars.clone(),
        }
    }

    fn contains(&self, v: Var) -> bool {
        match &self.0 {
            Node::Leaf => false,
            Node::Branch { vars, .. } => vars.contains(&v),
        }
    }

    /// The assignments of all root-to-leaf paths, left to right.
    pub fn leaf_assignments(&self) -> Vec<Assignment> {
        let mut out = Vec::new();
        self.collect_leaves(&Assignment::new(), &mut out);
        out
    }

    fn collect_leaves(&self, tau: &Assignment, out: &mut Vec<Assignment>) {
        match &self.0 {
            Node::Leaf => out.push(tau.clone()),
            Node::Branch { var, zero, one, .. } => {
                zero.collect_leaves(&tau.with(*var, false), out);
                one.collect_leaves(&tau.with(*var, true), out);
            }
        }
    }
}

const LEAF_TOKEN: &str = "[in-class]";

impl fmt::Display for BackdoorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Node::Leaf => f.write_str(LEAF_TOKEN),
            Node::Branch { var, zero, one, .. } => write!(f, "({var} 0:{zero} 1:{one})"),
        }
    }
}

impl FromStr for BackdoorTree {
    type Err = Error;

    /// Parses `(var 0:subtree 1:subtree)` with leaves `[in-class]`.
    fn from_str(s: &str) -> Result<BackdoorTree> {
        let mut p = Parser { rest: s };
        let tree = p.tree()?;
        p.skip_ws();
        if !p.rest.is_empty() {
            return Err(p.error("trailing input"));
        }
        Ok(tree)
    }
}

struct Parser<'a> {
    rest: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let near: String = self.rest.chars().take(16).collect();
        Error::InvalidTree(format!("{what} near {near:?}"))
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        match self.rest.strip_prefix(token) {
            Some(rest) => {
                self.rest = rest;
                Ok(())
            }
            None => Err(self.error(&format!("expected {token:?}"))),
        }
    }

    fn tree(&mut self) -> Result<BackdoorTree> {
        self.skip_ws();
        if self.rest.starts_with(LEAF_TOKEN) {
            self.eat(LEAF_TOKEN)?;
            return Ok(BackdoorTree::leaf());
        }
        self.eat("(")?;
        self.skip_ws();
        let digits = self.rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest.len());
        let id: u32 = self.rest[..digits].parse().map_err(|_| self.error("expected a variable"))?;
        if id == 0 {
            return Err(self.error("variables start at 1"));
        }
        self.rest = &self.rest[digits..];
        self.eat("0:")?;
        let zero = self.tree()?;
        self.eat("1:")?;
        let one = self.tree()?;
        self.eat(")")?;
        BackdoorTree::branch(Var::new(id), zero, one)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeVerdict {
    Accept,
    /// The reduct at this leaf is outside the class.
    RejectLeaf(Assignment),
    /// The tree branches on a variable that does not occur in the formula.
    ForeignVariable(Var),
}

impl TreeVerdict {
    pub fn accepted(&self) -> bool {
        matches!(self, TreeVerdict::Accept)
    }
}

pub fn validate_tree(f: &CnfFormula, t: &BackdoorTree, class: BaseClass) -> TreeVerdict {
    let vars = f.vars();
    if let Some(&v) = t.vars().difference(&vars).next() {
        return TreeVerdict::ForeignVariable(v);
    }
    match t.leaf_assignments().into_iter().find(|tau| !is_member(class, &f.reduce(tau))) {
        Some(tau) => TreeVerdict::RejectLeaf(tau),
        None => TreeVerdict::Accept,
    }
}

/// Decides `F` by solving the reduct at every leaf of a valid tree.
pub fn sat_via_tree(f: &CnfFormula, t: &BackdoorTree, class: BaseClass) -> Result<SatResult> {
    let verdict = validate_tree(f, t, class);
    if !verdict.accepted() {
        return Err(Error::InvalidTree(format!("{verdict:?}")));
    }
    for tau in t.leaf_assignments() {
        if let SatResult::Sat(m) = solve(class, &f.reduce(&tau))? {
            return Ok(SatResult::Sat(tau.extended(&m).completed(&f.vars(), false)));
        }
    }
    Ok(SatResult::Unsat)
}

/// Exact minimum-leaf backdoor tree search.
///
/// The cost of a reduct is 1 when it lies in the class, and otherwise the
/// least sum of the children's costs over all candidate branching
/// variables occurring in it. Costs are memoized on the reduct; ties go to
/// the smallest variable.
#[derive(Debug, Clone)]
pub struct TreeSearch {
    class: BaseClass,
    candidates: Option<BTreeSet<Var>>,
    budget: usize,
}

impl TreeSearch {
    pub fn new(class: BaseClass) -> TreeSearch {
        TreeSearch { class, candidates: None, budget: DEFAULT_TREE_BUDGET }
    }

    /// Only branch on these variables (all of `var(F)` by default).
    pub fn candidates(mut self, vars: BTreeSet<Var>) -> TreeSearch {
        self.candidates = Some(vars);
        self
    }

    pub fn budget(mut self, reducts: usize) -> TreeSearch {
        self.budget = reducts;
        self
    }

    /// A tree with the fewest leaves, if that number is at most `limit`.
    pub fn run(&self, f: &CnfFormula, limit: usize) -> Result<BackdoorTree> {
        let mut memo = HashMap::new();
        let best = self.cost(f, &mut memo)?;
        match best {
            Some((leaves, _)) if leaves <= limit => self.rebuild(f, &memo),
            _ => Err(Error::NoneWithin(limit)),
        }
    }

    fn cost(&self, f: &CnfFormula, memo: &mut HashMap<CnfFormula, Option<(usize, Option<Var>)>>) -> Result<Option<(usize, Option<Var>)>> {
        if let Some(&known) = memo.get(f) {
            return Ok(known);
        }
        if memo.len() >= self.budget {
            return Err(Error::BudgetExceeded { required: self.budget as u128 + 1, budget: self.budget as u128 });
        }
        let result = if is_member(self.class, f) {
            Some((1, None))
        } else {
            let mut best: Option<(usize, Option<Var>)> = None;
            for v in f.vars() {
                if self.candidates.as_ref().is_some_and(|c| !c.contains(&v)) {
                    continue;
                }
                let zero = self.cost(&f.assign(v, false), memo)?;
                let one = self.cost(&f.assign(v, true), memo)?;
                if let (Some((a, _)), Some((b, _))) = (zero, one) {
                    if best.is_none_or(|(c, _)| a + b < c) {
                        best = Some((a + b, Some(v)));
                    }
                }
                if best.is_some_and(|(c, _)| c == 2) {
                    break;
                }
            }
            best
        };
        memo.insert(f.clone(), result);
        Ok(result)
    }

    fn rebuild(&self, f: &CnfFormula, memo: &HashMap<CnfFormula, Option<(usize, Option<Var>)>>) -> Result<BackdoorTree> {
        match memo.get(f).copied().flatten() {
            Some((_, None)) => Ok(BackdoorTree::leaf()),
            Some((_, Some(v))) => BackdoorTree::branch(
                v,
                self.rebuild(&f.assign(v, false), memo)?,
                self.rebuild(&f.assign(v, true), memo)?,
            ),
            None => Err(Error::InvalidTree("reduct missing from the search memo".into())),
        }
    }
}

/// [`TreeSearch`] over all of `var(F)` with the default budget.
pub fn min_leaf_tree(f: &CnfFormula, class: BaseClass, limit: usize) -> Result<BackdoorTree> {
    TreeSearch::new(class).run(f, limit)
}

/// [`TreeSearch`] restricted to branching on `candidates`.
pub fn min_leaf_tree_over(f: &CnfFormula, class: BaseClass, candidates: &BTreeSet<Var>, limit: usize) -> Result<BackdoorTree> {
    TreeSearch::new(class).candidates(candidates.clone()).run(f, limit)
}
