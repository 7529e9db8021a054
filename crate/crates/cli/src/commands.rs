use std::collections::{BTreeMap, BTreeSet};
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use backdoors::detect::{
    detect, detect_deletion_clu, detect_deletion_forest, detect_deletion_rhorn, detect_strong_schaefer,
    detect_strong_searchtree, detect_weak_searchtree, has_specialized, BackdoorKind, BackdoorQuery, BackdoorResult,
    Certificate, Strategy, DEFAULT_BUDGET,
};
use backdoors::evaluate::{
    count_via_strong, sat_via_strong, sat_via_weak, validate_tree, BackdoorTree, TreeSearch, TreeVerdict, WeakOutcome,
    DEFAULT_TREE_BUDGET,
};
use backdoors::formula::dimacs::{parse_dimacs_bytes, parse_weights, write_dimacs_with_comments, ParseOptions};
use backdoors::genbench::{
    backdoor_tree_family, hs_weak_instance, or_gadget, pclique_instance, random_cnf, random_set_system,
    rhorn_weak_gadget, strong_rhorn_instance, Construction, PartiteGraph, SetSystem,
};
use backdoors::islands::{find_renaming, is_member, subsolver_run, BaseClass, ClassId, SubsolverOutcome};
use backdoors::{CnfFormula, Error, SatResult, Var, Weighting};
use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::report::{lits, var_ids, Outcome, RunReport};
use crate::{parse_edges, parse_families, Cli, Command, Generate, Input, Recipe};

enum Failure {
    Lib(Error),
    Msg(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Failure {
        Failure::Msg(s)
    }
}

#[derive(Default)]
struct Done {
    result: Value,
    algorithm: Option<String>,
    digest: Option<String>,
    seed: Option<u64>,
    code: u8,
    /// Printed instead of a report.
    raw: Option<String>,
}

struct Ctx {
    force: bool,
}

impl Ctx {
    fn detect_budget(&self) -> u128 {
        if self.force {
            u128::MAX
        } else {
            DEFAULT_BUDGET
        }
    }

    fn tree_budget(&self) -> usize {
        if self.force {
            usize::MAX
        } else {
            DEFAULT_TREE_BUDGET
        }
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run(args: Vec<String>) -> Outcome {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stderr: text, code: 2, ..Outcome::default() }
            } else {
                Outcome { stdout: text, code: 0, ..Outcome::default() }
            };
        }
    };
    if let Some(n) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let ctx = Ctx { force: cli.force };
    let start = Instant::now();
    let outcome = execute(&cli.command, &ctx);
    let wall_time_ms = start.elapsed().as_millis() as u64;
    let report = |done: Done| RunReport {
        command: args.iter().skip(1).cloned().collect(),
        input_digest: done.digest,
        result: done.result,
        algorithm: done.algorithm,
        wall_time_ms,
        seed: done.seed,
    };
    let render = |r: &RunReport| {
        let mut s = if cli.pretty { serde_json::to_string_pretty(r) } else { serde_json::to_string(r) }
            .expect("reports serialize");
        s.push('\n');
        s
    };
    match outcome {
        Ok(done) if done.raw.is_some() => {
            Outcome { stdout: done.raw.unwrap_or_default(), code: done.code, ..Outcome::default() }
        }
        Ok(done) => {
            let code = done.code;
            Outcome { stdout: render(&report(done)), code, ..Outcome::default() }
        }
        Err(Failure::Lib(Error::BudgetExceeded { required, budget })) => {
            let done = Done {
                result: json!({
                    "status": "budget-exceeded",
                    "required": required.to_string(),
                    "budget": budget.to_string(),
                }),
                ..Done::default()
            };
            Outcome {
                stdout: render(&report(done)),
                stderr: format!("error: search needs {required} steps, budget is {budget}; rerun with --force\n"),
                code: 3,
            }
        }
        Err(Failure::Lib(e)) => Outcome { stderr: format!("error: {e}\n"), code: 2, ..Outcome::default() },
        Err(Failure::Msg(m)) => Outcome { stderr: format!("error: {m}\n"), code: 2, ..Outcome::default() },
    }
}

fn execute(command: &Command, ctx: &Ctx) -> Result<Done, Failure> {
    match command {
        Command::Recognize { input, class } => recognize(input, *class),
        Command::Solve { input, class, backdoor } => solve(input, *class, backdoor.as_ref(), ctx),
        Command::Detect { input, kind, class, k, algorithm } => detect_cmd(input, *kind, *class, *k, algorithm, ctx),
        Command::Evaluate { input, class, backdoor, kind } => evaluate(input, *class, backdoor, *kind),
        Command::Count { input, class, weights, backdoor } => {
            count_cmd(input, *class, weights.as_deref(), backdoor.as_ref(), ctx)
        }
        Command::Tree { input, class, max_leaves, over, validate } => {
            tree(input, *class, *max_leaves, over.as_ref(), validate.as_deref(), ctx)
        }
        Command::Generate(g) => generate(g),
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| Failure::Msg(format!("{}: {e}", path.display())))
    }
}

fn load(input: &Input) -> Result<(CnfFormula, String), Failure> {
    let bytes = read_bytes(&input.file)?;
    let options = ParseOptions { strip_tautologies: input.strip_tautologies };
    let file = parse_dimacs_bytes(&bytes, options).map_err(|e| format!("{}: {e}", input.file.display()))?;
    Ok((file.formula, digest(&bytes)))
}

fn status(r: &SatResult) -> Value {
    match r {
        SatResult::Sat(m) => json!({ "status": "sat", "model": lits(m) }),
        SatResult::Unsat => json!({ "status": "unsat" }),
    }
}

fn recognize(input: &Input, class: BaseClass) -> Result<Done, Failure> {
    let (f, digest) = load(input)?;
    let member = is_member(class, &f);
    let mut result = json!({ "class": class.to_string(), "member": member });
    if class.id == ClassId::RHorn && member {
        if let Some(x) = find_renaming(&f) {
            result["renaming"] = json!(var_ids(&x));
        }
    }
    if let Some(which) = class.id.subsolver() {
        let trace = subsolver_run(which, &f);
        result["outcome"] = json!(match trace.outcome {
            SubsolverOutcome::DecidedSat => "decided-sat",
            SubsolverOutcome::DecidedUnsat => "decided-unsat",
            SubsolverOutcome::GiveUp => "give-up",
        });
        result["steps"] = json!(trace.steps.len());
    }
    Ok(Done { result, digest: Some(digest), code: if member { 0 } else { 1 }, ..Done::default() })
}

/// A smallest strong backdoor, trying sizes upwards when only brute force
/// applies so that the budget is charged for the size actually needed.
fn smallest_strong(f: &CnfFormula, class: BaseClass, ctx: &Ctx) -> Result<BackdoorResult, Failure> {
    let n = f.num_vars();
    let query = |k| BackdoorQuery::new(BackdoorKind::Strong, class, k).with_budget(ctx.detect_budget());
    let found = if has_specialized(BackdoorKind::Strong, class) {
        detect(f, &query(n), Strategy::Auto)
    } else {
        (0..=n)
            .map(|k| detect(f, &query(k), Strategy::BruteForce))
            .find(|r| !matches!(r, Err(Error::NoneWithin(_))))
            .unwrap_or(Err(Error::NoneWithin(n)))
    };
    found.map_err(|e| match e {
        Error::NoneWithin(_) => Failure::Msg(format!("the formula has no strong backdoor into {class}")),
        e => Failure::Lib(e),
    })
}

fn solve(input: &Input, class: BaseClass, backdoor: Option<&BTreeSet<Var>>, ctx: &Ctx) -> Result<Done, Failure> {
    let (f, digest) = load(input)?;
    let (b, algorithm) = match backdoor {
        Some(b) => (b.clone(), None),
        None => {
            let r = smallest_strong(&f, class, ctx)?;
            (r.variables, Some(r.algorithm.name().to_string()))
        }
    };
    let verdict = sat_via_strong(&f, &b, class)?;
    let mut result = status(&verdict);
    result["class"] = json!(class.to_string());
    result["backdoor"] = json!(var_ids(&b));
    Ok(Done { result, algorithm, digest: Some(digest), ..Done::default() })
}

fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::None => Value::Null,
        Certificate::Witness(t) => json!({ "type": "witness", "assignment": lits(t) }),
        Certificate::Renaming(x) => json!({ "type": "renaming", "flipped": var_ids(x) }),
    }
}

/// Runs the detector named `id`, if it handles the query.
fn run_named(f: &CnfFormula, q: &BackdoorQuery, id: &str) -> Result<BackdoorResult, Failure> {
    let (kind, class) = (q.kind, q.class);
    let plain = !class.empty_clause_detection;
    let searchable = plain && (class.id.is_schaefer() || class.id == ClassId::Clu);
    let not_weak = kind != BackdoorKind::Weak;
    let applies = match id {
        "weak-search-tree" => kind == BackdoorKind::Weak && searchable,
        "strong-search-tree" => kind == BackdoorKind::Strong && searchable,
        "strong-vertex-cover" => not_weak && plain && matches!(class.id, ClassId::Horn | ClassId::HornMinus),
        "strong-hitting-set" => not_weak && plain && class.id == ClassId::TwoCnf,
        "strong-validity" => not_weak && plain && matches!(class.id, ClassId::ZeroVal | ClassId::OneVal),
        "deletion-clu-obstructions" => kind == BackdoorKind::Deletion && plain && class.id == ClassId::Clu,
        "deletion-forest-cycles" => kind == BackdoorKind::Deletion && plain && class.id == ClassId::Forest,
        "deletion-rhorn-vertex-cover" => kind == BackdoorKind::Deletion && plain && class.id == ClassId::RHorn,
        _ => return Err(Failure::Msg(format!("unknown algorithm `{id}`"))),
    };
    if !applies {
        return Err(Failure::Msg(format!("algorithm `{id}` does not apply to {kind} backdoors into {class}")));
    }
    let k = q.k;
    Ok(match id {
        "weak-search-tree" => detect_weak_searchtree(f, class, k),
        "strong-search-tree" => detect_strong_searchtree(f, class, k),
        "deletion-clu-obstructions" => detect_deletion_clu(f, k),
        "deletion-forest-cycles" => detect_deletion_forest(f, k),
        "deletion-rhorn-vertex-cover" => detect_deletion_rhorn(f, k),
        _ => detect_strong_schaefer(f, class.id, k),
    }?)
}

fn detect_cmd(
    input: &Input,
    kind: BackdoorKind,
    class: BaseClass,
    k: usize,
    algorithm: &str,
    ctx: &Ctx,
) -> Result<Done, Failure> {
    if kind == BackdoorKind::Deletion && class.id.subsolver().is_some() {
        return Err(Failure::Msg("deletion undefined for subsolver classes".into()));
    }
    let (f, digest) = load(input)?;
    let query = BackdoorQuery::new(kind, class, k).with_budget(ctx.detect_budget());
    let found = match algorithm {
        "auto" => detect(&f, &query, Strategy::Auto).map_err(Failure::from),
        "bruteforce" | "brute-force" => detect(&f, &query, Strategy::BruteForce).map_err(Failure::from),
        "specialized" => detect(&f, &query, Strategy::Specialized).map_err(Failure::from),
        id => run_named(&f, &query, id),
    };
    let header = json!({ "kind": kind.to_string(), "class": class.to_string(), "k": k });
    let mut done = Done { digest: Some(digest), ..Done::default() };
    match found {
        Ok(r) => {
            done.result = header;
            done.result["found"] = json!(true);
            done.result["size"] = json!(r.size());
            done.result["variables"] = json!(var_ids(&r.variables));
            done.result["certificate"] = certificate(&r.certificate);
            // every detector returns a smallest backdoor
            done.result["minimum"] = json!(true);
            done.algorithm = Some(r.algorithm.name().to_string());
        }
        Err(Failure::Lib(Error::NoneWithin(_))) => {
            done.result = header;
            done.result["found"] = json!(false);
            done.algorithm = Some(algorithm.to_string());
            done.code = 1;
        }
        Err(e) => return Err(e),
    }
    Ok(done)
}

fn evaluate(input: &Input, class: BaseClass, b: &BTreeSet<Var>, kind: BackdoorKind) -> Result<Done, Failure> {
    let (f, digest) = load(input)?;
    let result = match kind {
        BackdoorKind::Weak => match sat_via_weak(&f, b, class) {
            WeakOutcome::Sat(m) => json!({ "status": "sat", "model": lits(&m) }),
            WeakOutcome::NotWitnessed => json!({ "status": "not-witnessed" }),
        },
        BackdoorKind::Strong => status(&sat_via_strong(&f, b, class)?),
        BackdoorKind::Deletion => {
            let v = backdoors::detect::verify_backdoor(&f, b, kind, class);
            if !v.accepted() {
                return Err(Error::InvalidBackdoor { kind: kind.to_string(), reason: format!("{v:?}") }.into());
            }
            // a deletion backdoor into a clause-induced class is strong
            status(&sat_via_strong(&f, b, class)?)
        }
    };
    Ok(Done { result, digest: Some(digest), ..Done::default() })
}

fn count_cmd(
    input: &Input,
    class: BaseClass,
    weights: Option<&Path>,
    backdoor: Option<&BTreeSet<Var>>,
    ctx: &Ctx,
) -> Result<Done, Failure> {
    if !class.countable() {
        return Err(Failure::Msg(format!("weighted counting needs clu or forest, not {class}")));
    }
    let (f, digest) = load(input)?;
    let w = match weights {
        Some(path) => {
            let bytes = read_bytes(path)?;
            let text = String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
            parse_weights(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Weighting::uniform(),
    };
    let (b, algorithm) = match backdoor {
        Some(b) => (b.clone(), None),
        None => {
            let r = smallest_strong(&f, class, ctx)?;
            (r.variables, Some(r.algorithm.name().to_string()))
        }
    };
    let total = count_via_strong(&f, &b, class, &w)?;
    let mut result = json!({
        "class": class.to_string(),
        "backdoor": var_ids(&b),
        "count": total.to_string(),
    });
    if weights.is_none() {
        let scale = BigRational::from_integer(BigInt::from(1) << f.num_vars());
        result["models"] = json!((total * scale).to_integer().to_string());
    }
    Ok(Done { result, algorithm, digest: Some(digest), ..Done::default() })
}

fn describe_tree(t: &BackdoorTree) -> Value {
    json!({
        "tree": t.to_string(),
        "leaves": t.leaves(),
        "depth": t.depth(),
        "variables": var_ids(&t.vars()),
    })
}

fn tree(
    input: &Input,
    class: BaseClass,
    max_leaves: usize,
    over: Option<&BTreeSet<Var>>,
    validate: Option<&str>,
    ctx: &Ctx,
) -> Result<Done, Failure> {
    let (f, digest) = load(input)?;
    let mut done = Done { digest: Some(digest), ..Done::default() };
    if let Some(text) = validate {
        let t = BackdoorTree::from_str(text)?;
        let verdict = validate_tree(&f, &t, class);
        done.result = describe_tree(&t);
        done.result["valid"] = json!(verdict.accepted());
        match &verdict {
            TreeVerdict::Accept => {}
            TreeVerdict::RejectLeaf(tau) => done.result["rejected_leaf"] = json!(lits(tau)),
            TreeVerdict::ForeignVariable(v) => done.result["foreign_variable"] = json!(v.id()),
        }
        done.code = if verdict.accepted() { 0 } else { 1 };
        return Ok(done);
    }
    let mut search = TreeSearch::new(class).budget(ctx.tree_budget());
    if let Some(vars) = over {
        search = search.candidates(vars.clone());
    }
    done.algorithm = Some("min-leaf-tree".into());
    match search.run(&f, max_leaves) {
        Ok(t) => {
            done.result = describe_tree(&t);
            done.result["found"] = json!(true);
        }
        Err(Error::NoneWithin(limit)) => {
            done.result = json!({ "found": false, "max_leaves": limit });
            done.code = 1;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(done)
}

fn set_system(g: &Generate) -> Result<(SetSystem, Option<u64>), Failure> {
    match &g.sets {
        Some(text) => Ok((SetSystem::new(parse_families(text)?, g.k)?, None)),
        None => Ok((random_set_system(g.elements, g.m, g.width, g.k, g.seed)?, Some(g.seed))),
    }
}

fn show_sets(s: &SetSystem) -> String {
    s.sets
        .iter()
        .map(|x| x.iter().map(|v| v.id().to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn require<T: Copy>(value: Option<T>, flag: &str, recipe: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Msg(format!("{recipe} needs --{flag}")))
}

fn generate(g: &Generate) -> Result<Done, Failure> {
    let recipe = g.construction;
    let name = match recipe {
        Recipe::TreeFamily => "tree-family",
        Recipe::OrGadget => "or-gadget",
        Recipe::HsWeak => "hs-weak",
        Recipe::RhornWeak => "rhorn-weak",
        Recipe::StrongRhorn => "strong-rhorn",
        Recipe::Pclique => "pclique",
        Recipe::Random => "random",
    };
    let vars = || -> Result<Vec<Var>, Failure> {
        let x = g.vars.as_ref().ok_or_else(|| format!("{name} needs --vars"))?;
        Ok(x.iter().copied().collect())
    };
    let class_token = g.class.map(|c| c.id.token().to_string());
    let mut seed = None;
    let (formula, construction) = match recipe {
        Recipe::TreeFamily => {
            let n = require(g.n, "n", name)?;
            let inst = backdoor_tree_family(n)?;
            let c = inst.describe(name, None, &[("n", n.to_string())]);
            (inst.formula, c)
        }
        Recipe::OrGadget => {
            let class = require(g.class, "class", name)?;
            let x = vars()?;
            let inst = or_gadget(class.id, &x)?;
            (inst.formula.clone(), inst.describe(name, class_token.as_deref(), &[]))
        }
        Recipe::HsWeak => {
            let class = require(g.class, "class", name)?;
            let (s, drawn) = set_system(g)?;
            seed = drawn;
            let inst = hs_weak_instance(&s, class.id)?;
            let params = [("sets", show_sets(&s)), ("k", s.k.to_string())];
            (inst.formula.clone(), inst.describe(name, class_token.as_deref(), &params))
        }
        Recipe::RhornWeak => {
            let inst = rhorn_weak_gadget(&vars()?)?;
            (inst.formula.clone(), inst.describe(name, Some(ClassId::RHorn.token()), &[]))
        }
        Recipe::StrongRhorn => {
            let (s, drawn) = set_system(g)?;
            seed = drawn;
            let inst = strong_rhorn_instance(&s)?;
            let params = [("sets", show_sets(&s)), ("k", s.k.to_string())];
            (inst.formula.clone(), inst.describe(name, Some(ClassId::RHorn.token()), &params))
        }
        Recipe::Pclique => {
            let parts = g.parts.as_deref().ok_or_else(|| format!("{name} needs --parts"))?;
            let parts: Vec<Vec<Var>> = parse_families(parts)?.into_iter().map(|p| p.into_iter().collect()).collect();
            let h = PartiteGraph::new(parts, parse_edges(&g.edges)?)?;
            let f = pclique_instance(&h);
            let params = BTreeMap::from([
                ("parts".to_string(), g.parts.clone().unwrap_or_default()),
                ("edges".to_string(), g.edges.clone()),
            ]);
            let c = Construction {
                generator: name.into(),
                class: None,
                parameters: params,
                external: h.vertices(),
                internal: Vec::new(),
            };
            (f, c)
        }
        Recipe::Random => {
            let n = require(g.n, "n", name)?;
            seed = Some(g.seed);
            let f = random_cnf(n, g.m, g.width, g.seed)?;
            let params = BTreeMap::from([
                ("n".to_string(), n.to_string()),
                ("m".to_string(), g.m.to_string()),
                ("width".to_string(), g.width.to_string()),
                ("seed".to_string(), g.seed.to_string()),
            ]);
            let c = Construction {
                generator: name.into(),
                class: None,
                parameters: params,
                external: (1..=n as u32).map(Var::new).collect(),
                internal: Vec::new(),
            };
            (f, c)
        }
    };
    let comments = [format!("{name} {}", render_params(&construction.parameters))];
    let dimacs = write_dimacs_with_comments(&formula, &comments);
    let Some(out) = &g.out else {
        return Ok(Done { raw: Some(dimacs), ..Done::default() });
    };
    let sidecar_path = sidecar(out);
    let mut sidecar = serde_json::to_string_pretty(&construction).expect("constructions serialize");
    sidecar.push('\n');
    std::fs::write(out, &dimacs).map_err(|e| format!("{}: {e}", out.display()))?;
    std::fs::write(&sidecar_path, &sidecar).map_err(|e| format!("{}: {e}", sidecar_path.display()))?;
    let result = json!({
        "dimacs": out.display().to_string(),
        "sidecar": sidecar_path.display().to_string(),
        "dimacs_digest": digest(dimacs.as_bytes()),
        "variables": formula.num_vars(),
        "clauses": formula.len(),
        "construction": serde_json::to_value(&construction).expect("constructions serialize"),
    });
    Ok(Done { result, algorithm: Some(name.into()), seed, ..Done::default() })
}

fn render_params(params: &BTreeMap<String, String>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn sidecar(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}
