//! The `backdoor` command-line tool.
//!
//! Every subcommand prints one JSON [`RunReport`] to stdout. Diagnostics go
//! to stderr. Exit codes: `0` success, `1` a negative answer (non-member,
//! no backdoor within `k`, invalid tree), `2` an error, `3` a brute-force
//! or tree search refused for exceeding its budget (rerun with `--force`).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use backdoors::detect::BackdoorKind;
use backdoors::islands::BaseClass;
use backdoors::Var;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

pub use commands::run;
pub use report::{Outcome, RunReport};

#[derive(Debug, Parser)]
#[command(name = "backdoor", version, about = "Backdoor sets for SAT: recognition, detection and evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for the parallel parts (output does not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Lift the enumeration budget of brute-force detection and tree search.
    #[arg(long, global = true)]
    pub force: bool,

    /// Indent the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct Input {
    /// DIMACS CNF file, or `-` for stdin.
    pub file: PathBuf,

    /// Drop tautological clauses instead of rejecting the input.
    #[arg(long)]
    pub strip_tautologies: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership in a base class (exit 0 member, 1 non-member).
    Recognize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_class)]
        class: BaseClass,
    },
    /// Decide satisfiability through a strong backdoor into a class.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_class, default_value = "horn")]
        class: BaseClass,
        /// Use this backdoor instead of detecting a smallest one.
        #[arg(long, value_parser = parse_vars)]
        backdoor: Option<BTreeSet<Var>>,
    },
    /// Find a smallest weak, strong or deletion backdoor of size at most k.
    Detect {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_kind)]
        kind: BackdoorKind,
        #[arg(long, value_parser = parse_class)]
        class: BaseClass,
        #[arg(long)]
        k: usize,
        /// `auto`, `bruteforce`, `specialized`, or an algorithm id such as
        /// `strong-vertex-cover` or `deletion-forest-cycles`.
        #[arg(long, default_value = "auto")]
        algorithm: String,
    },
    /// Decide satisfiability with a given weak or strong backdoor.
    Evaluate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_class)]
        class: BaseClass,
        /// Comma-separated variable ids; an empty string is the empty set.
        #[arg(long, value_parser = parse_vars)]
        backdoor: BTreeSet<Var>,
        #[arg(long, value_parser = parse_kind, default_value = "strong")]
        kind: BackdoorKind,
    },
    /// Weighted model count through a strong backdoor into clu or forest.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_class, default_value = "clu")]
        class: BaseClass,
        /// Weights file with lines `w <var> <num>/<den>`; unlisted variables
        /// weigh 1/2.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, value_parser = parse_vars)]
        backdoor: Option<BTreeSet<Var>>,
    },
    /// Find a backdoor tree with fewest leaves, or validate a given one.
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_class)]
        class: BaseClass,
        #[arg(long, default_value_t = 64)]
        max_leaves: usize,
        /// Only branch on these variables.
        #[arg(long, value_parser = parse_vars)]
        over: Option<BTreeSet<Var>>,
        /// Check this tree, written `(var 0:subtree 1:subtree)` with leaves
        /// `[in-class]`, instead of searching.
        #[arg(long)]
        validate: Option<String>,
    },
    /// Write a generated instance as DIMACS plus a JSON description.
    Generate(Generate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    TreeFamily,
    OrGadget,
    HsWeak,
    RhornWeak,
    StrongRhorn,
    Pclique,
    Random,
}

#[derive(Debug, Args)]
pub struct Generate {
    #[arg(long, value_enum)]
    pub construction: Recipe,

    /// Output DIMACS file; the description goes to `<out>.json`. Without
    /// it the DIMACS text is written to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_parser = parse_class)]
    pub class: Option<BaseClass>,

    /// Size parameter of tree-family, or the number of variables of random.
    #[arg(long)]
    pub n: Option<usize>,

    /// External variables of a gadget.
    #[arg(long, value_parser = parse_vars)]
    pub vars: Option<BTreeSet<Var>>,

    /// A set system such as `1,2;2,3`. Drawn at random from `--seed` when
    /// absent.
    #[arg(long)]
    pub sets: Option<String>,

    /// Hitting set budget of hs-weak and strong-rhorn.
    #[arg(long, default_value_t = 1)]
    pub k: usize,

    /// Parts of a partite graph, e.g. `1,2;3,4`.
    #[arg(long)]
    pub parts: Option<String>,

    /// Edges of a partite graph, e.g. `1-3,2-4`.
    #[arg(long, default_value = "")]
    pub edges: String,

    /// Number of clauses (random) or sets (random set systems).
    #[arg(long, default_value_t = 4)]
    pub m: usize,

    /// Maximum clause width (random) or set size (random set systems).
    #[arg(long, default_value_t = 3)]
    pub width: usize,

    /// Elements of a random set system.
    #[arg(long, default_value_t = 5)]
    pub elements: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn parse_class(s: &str) -> Result<BaseClass, String> {
    BaseClass::from_str(s).map_err(|e| e.to_string())
}

pub fn parse_kind(s: &str) -> Result<BackdoorKind, String> {
    BackdoorKind::from_str(s).map_err(|e| e.to_string())
}

pub fn parse_var(s: &str) -> Result<Var, String> {
    match s.trim().parse::<u32>() {
        Ok(id) if id > 0 => Ok(Var::new(id)),
        _ => Err(format!("`{s}` is not a variable id")),
    }
}

pub fn parse_vars(s: &str) -> Result<BTreeSet<Var>, String> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_var).collect()
}

/// `1,2;2,3` into a list of sets.
pub fn parse_families(s: &str) -> Result<Vec<BTreeSet<Var>>, String> {
    s.split(';').map(parse_vars).collect()
}

pub fn parse_edges(s: &str) -> Result<Vec<(Var, Var)>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (u, v) = t.split_once('-').ok_or_else(|| format!("edge `{t}` is not `u-v`"))?;
            Ok((parse_var(u)?, parse_var(v)?))
        })
        .collect()
}
