//! `pebble`: command-line access to the pebbling, reduction and LP tooling.
//!
//! Exit codes: 0 success, 1 a "no" or "infeasible" verdict, 2 usage or
//! input errors, 3 a search or enumeration limit was reached.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pebble_core::b2lc::{
    solve_3partition, solve_b2lc, B2lcError, B2lcInstance, ThreePartitionInstance, DEFAULT_ENUMERATION_CAP,
    DEFAULT_PARTITION_CAP,
};
use pebble_core::depth_reduce::{greedy_reduce, is_reducible, verify_set, ReduceError};
use pebble_core::graph::{chain, complete, layered_random, pyramid, Dag, DepthConvention, ExtraEdgeRule, NodeId};
use pebble_core::lp::{
    build_pebbling_ip, build_reducible_ip, emit, fractional_pebbling_solution, fractional_reducible_solution,
    fractional_timed_solution, gap_report, relax, verify_solution, FeasibilityReport, LpModel, LpSolution,
};
use pebble_core::pebbling::{cost, validate, Mode, Pebbling};
use pebble_core::reductions::{
    append_chain, b2lc_to_graph, counterexample_dag, reduce_indegree, threepartition_to_b2lc, vc_to_reducible,
    ReductionWarning, UndirectedGraph,
};
use pebble_core::search::{
    exact_min_space, exact_min_st, exact_pcc, exact_pcc_bounded, SearchError, SearchLimits, SearchResult,
};
use pebble_core::suite;

/// Writes to standard output; a closed pipe ends the process quietly.
macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

macro_rules! out {
    () => { out_raw!("\n") };
    ($($arg:tt)*) => {{
        out_raw!($($arg)*);
        out_raw!("\n");
    }};
}

const OK: u8 = 0;
const NO: u8 = 1;
const LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "pebble", version, about = "Black pebbling of DAGs: costs, exact search, reductions and LP models")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Longest path of a graph.
    Depth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Conv::Nodes)]
        convention: Conv,
    },
    /// Check a pebbling against a graph.
    PebbleCheck {
        #[arg(long)]
        graph: PathBuf,
        pebbling: PathBuf,
    },
    /// Cumulative and space-time cost of a pebbling.
    Cost { pebbling: PathBuf },
    /// Exact minimum cumulative cost.
    Pcc(SearchArgs),
    /// Exact minimum cumulative cost within a round limit.
    PccBounded {
        #[arg(long)]
        t_max: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact minimum space-time cost.
    MinSt(SearchArgs),
    /// Exact minimum number of pebbles per round.
    MinSpace(SearchArgs),
    /// Decide a B2LC instance.
    B2lcSolve {
        instance: PathBuf,
        /// Largest number of group assignments to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Decide a 3-PARTITION instance.
    #[command(name = "3part-solve")]
    ThreePartSolve {
        instance: PathBuf,
        /// Largest `n` accepted.
        #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
        cap: usize,
    },
    /// Instance and graph constructions.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Decide (e, d)-reducibility.
    DepthCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Conv::Nodes)]
        convention: Conv,
        #[arg(long, value_enum, default_value_t = DepthMode::Exact)]
        mode: DepthMode,
        #[arg(long, default_value_t = 50_000_000)]
        max_steps: u64,
    },
    /// Integer programs, relaxations and closed-form fractional solutions.
    #[command(subcommand)]
    Lp(Lp),
    /// Run the acceptance checks.
    VerifyPaper {
        /// Run only these checks, by id or name.
        #[arg(long)]
        only: Vec<String>,
        /// List the checks and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Node count, or rows for a pyramid.
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Rule::Uniform)]
    rule: Rule,
    /// Edge probability in percent for `--rule bernoulli`.
    #[arg(long, default_value_t = 50)]
    percent: u8,
    /// Print Graphviz DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum GenKind {
    Chain,
    Pyramid,
    Complete,
    Layered,
}

#[derive(Copy, Clone, ValueEnum)]
enum Rule {
    None,
    Uniform,
    Bernoulli,
}

#[derive(Copy, Clone, ValueEnum)]
enum Conv {
    Nodes,
    Edges,
}

impl From<Conv> for DepthConvention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Nodes => DepthConvention::Nodes,
            Conv::Edges => DepthConvention::Edges,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum PebMode {
    Parallel,
    Sequential,
}

impl From<PebMode> for Mode {
    fn from(m: PebMode) -> Self {
        match m {
            PebMode::Parallel => Mode::Parallel,
            PebMode::Sequential => Mode::Sequential,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum DepthMode {
    Exact,
    Greedy,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = PebMode::Parallel)]
    mode: PebMode,
    #[arg(long)]
    max_states: Option<u64>,
    /// Largest graph accepted, at most 64.
    #[arg(long)]
    max_nodes: Option<usize>,
    /// Cap on pebbles per round.
    #[arg(long)]
    max_space: Option<usize>,
    #[arg(long)]
    time_budget: Option<f64>,
    /// Known achievable cost used to prune.
    #[arg(long)]
    seed_bound: Option<u64>,
}

impl SearchArgs {
    fn limits(&self) -> SearchLimits {
        let d = SearchLimits::default();
        SearchLimits {
            max_nodes: self.max_nodes.unwrap_or(d.max_nodes),
            max_states: self.max_states.unwrap_or(d.max_states),
            max_space: self.max_space,
            upper_bound_seed: self.seed_bound,
            time_budget: self.time_budget.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Subcommand)]
enum Reduce {
    /// 3-PARTITION instance to B2LC instance.
    #[command(name = "3part-to-b2lc")]
    ThreePartToB2lc { instance: PathBuf },
    /// B2LC instance to its gadget graph layout.
    B2lcToGraph {
        instance: PathBuf,
        /// Copies of each variable chain; defaults to 2cmn + 2ckm + 2.
        #[arg(long)]
        tau: Option<usize>,
    },
    /// Undirected graph `{"n": N, "edges": [[u, v], ...]}` on vertices 1..=N
    /// to a depth-reducibility instance.
    Vc {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Conv::Nodes)]
        convention: Conv,
    },
    /// Bound every indegree by `delta` with in-trees.
    Indeg {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        delta: usize,
    },
    /// Hang a path below the unique sink.
    AppendChain {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        length: usize,
    },
    /// The 16-node cost/time counterexample.
    Counterexample,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModelKind {
    Pebbling,
    Reducible,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = ModelKind::Pebbling)]
    model: ModelKind,
    /// Rounds in the pebbling program; defaults to n^2.
    #[arg(long)]
    horizon: Option<usize>,
    /// Depth bound for the reducibility program.
    #[arg(long)]
    d: Option<usize>,
}

impl ModelArgs {
    fn build(&self) -> Result<LpModel> {
        let g = read_graph(&self.graph)?;
        Ok(match self.model {
            ModelKind::Pebbling => build_pebbling_ip(&g, self.horizon),
            ModelKind::Reducible => build_reducible_ip(&g, self.d.context("--d is required for --model reducible")?),
        })
    }
}

#[derive(Subcommand)]
enum Lp {
    /// Summary of the pebbling integer program.
    BuildPebbling {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Summary of the reducibility integer program.
    BuildReducible {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// LP-format text of the relaxation.
    Relax(ModelArgs),
    /// LP-format text of the integer program.
    Emit(ModelArgs),
    /// Check the closed-form fractional pebbling solution.
    FracPebbling {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
        /// Also write the solution as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the horizon-n timed fractional solution.
    FracTimed {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the closed-form fractional reducibility solution.
    FracReducible {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file against a model.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Check against the relaxation instead of the integer program.
        #[arg(long)]
        relaxed: bool,
        solution: PathBuf,
    },
    /// Exact pebbling cost against the fractional objective.
    Gap(SearchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", error_chain(&e));
            ExitCode::from(2)
        }
    }
}

/// The error chain, skipping causes already quoted by the message above them.
fn error_chain(e: &anyhow::Error) -> String {
    let mut out = String::new();
    let mut prev = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !prev.contains(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
        prev = msg;
    }
    out
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Dag> {
    Dag::from_json(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_pebbling(path: &Path) -> Result<Pebbling> {
    Pebbling::from_json(&read(path)?).with_context(|| format!("parsing pebbling {}", path.display()))
}

fn read_b2lc(path: &Path) -> Result<B2lcInstance> {
    B2lcInstance::from_json(&read(path)?).with_context(|| format!("parsing B2LC instance {}", path.display()))
}

fn read_3part(path: &Path) -> Result<ThreePartitionInstance> {
    let raw: ThreePartitionInstance = serde_json::from_str(&read(path)?)
        .with_context(|| format!("parsing 3-PARTITION instance {}", path.display()))?;
    Ok(ThreePartitionInstance::new(raw.elements().to_vec(), raw.n())?)
}

fn read_undirected(path: &Path) -> Result<UndirectedGraph> {
    let v: Value = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let n = v["n"].as_u64().context("expected {\"n\": int, \"edges\": [[u, v], ...]}")? as usize;
    let mut edges = Vec::new();
    for e in v["edges"].as_array().map(Vec::as_slice).unwrap_or_default() {
        let pair = e.as_array().filter(|p| p.len() == 2).context("each edge is a pair [u, v]")?;
        let end = |x: &Value| x.as_u64().map(|x| x as usize).context("edge endpoints are integers");
        edges.push((end(&pair[0])?, end(&pair[1])?));
    }
    UndirectedGraph::new(n, edges).map_err(anyhow::Error::msg)
}

fn parse(text: &str) -> Value {
    serde_json::from_str(text).expect("library json is valid")
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn write_solution(out: &Option<PathBuf>, sol: &LpSolution) -> Result<()> {
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&sol.to_json())?;
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Gen(a) => {
            let g = match a.kind {
                GenKind::Chain => chain(a.size.max(1)),
                GenKind::Pyramid => pyramid(a.size.max(1)),
                GenKind::Complete => complete(a.size.max(1)),
                GenKind::Layered => {
                    let rule = match a.rule {
                        Rule::None => ExtraEdgeRule::None,
                        Rule::Uniform => ExtraEdgeRule::UniformEarlier,
                        Rule::Bernoulli => ExtraEdgeRule::Bernoulli { percent: a.percent.min(100) },
                    };
                    layered_random(a.size.max(1), a.seed, rule)
                }
            };
            if a.dot {
                out_raw!("{}", g.to_dot());
            } else {
                out!("{}", g.to_json());
            }
            Ok(OK)
        }
        Command::Depth { graph, convention } => {
            let g = read_graph(graph)?;
            let d = g.depth((*convention).into());
            if json {
                print_json(&json!({ "depth": d, "convention": DepthConvention::from(*convention) }));
            } else {
                out!("{d}");
            }
            Ok(OK)
        }
        Command::PebbleCheck { graph, pebbling } => {
            let g = read_graph(graph)?;
            let p = read_pebbling(pebbling)?;
            let verdict = validate(&g, &p);
            if json {
                print_json(
                    &json!({ "legal": verdict.is_legal(), "first_violation": verdict.first_violation(), "cost": cost(&p) }),
                );
            } else if let Some(v) = verdict.first_violation() {
                let at = v.round.map_or("at the end".to_string(), |r| format!("in round {r}"));
                out!("illegal: node {} {} ({})", v.node, at, v.reason);
            } else {
                let c = cost(&p);
                out!("legal: cc {} st {} rounds {} max space {}", c.cc, c.st, c.t, c.max_space);
            }
            Ok(if verdict.is_legal() { OK } else { NO })
        }
        Command::Cost { pebbling } => {
            let c = cost(&read_pebbling(pebbling)?);
            if json {
                print_json(&serde_json::to_value(c)?);
            } else {
                out!("cc {}\nst {}\nrounds {}\nmax space {}", c.cc, c.st, c.t, c.max_space);
            }
            Ok(OK)
        }
        Command::Pcc(s) => {
            let g = read_graph(&s.graph)?;
            report_search(json, "pcc", exact_pcc(&g, s.mode.into(), &s.limits()))
        }
        Command::PccBounded { t_max, search: s } => {
            let g = read_graph(&s.graph)?;
            report_search(json, "pcc", exact_pcc_bounded(&g, *t_max, s.mode.into(), &s.limits()))
        }
        Command::MinSt(s) => {
            let g = read_graph(&s.graph)?;
            report_search(json, "st", exact_min_st(&g, s.mode.into(), &s.limits()))
        }
        Command::MinSpace(s) => {
            let g = read_graph(&s.graph)?;
            report_search(json, "space", exact_min_space(&g, s.mode.into(), &s.limits()))
        }
        Command::B2lcSolve { instance, cap } => {
            let inst = read_b2lc(instance)?;
            for w in inst.warnings() {
                eprintln!("warning: {w}");
            }
            match solve_b2lc(&inst, *cap) {
                Ok(w) => {
                    if json {
                        print_json(&json!({ "satisfiable": w.is_some(), "witness": w }));
                    } else if let Some(w) = &w {
                        out!("yes");
                        for (y, row) in w.values.iter().enumerate() {
                            out!("assignment {}: {:?}", y + 1, row);
                        }
                        out!("groups: {:?}", w.group_of);
                    } else {
                        out!("no");
                    }
                    Ok(if w.is_some() { OK } else { NO })
                }
                Err(e @ B2lcError::TooLarge { .. }) => limit(e),
                Err(e) => Err(e.into()),
            }
        }
        Command::ThreePartSolve { instance, cap } => {
            let p = read_3part(instance)?;
            if !p.promise_holds() {
                eprintln!("warning: some element is outside (T/4n, T/2n)");
            }
            match solve_3partition(&p, *cap) {
                Ok(t) => {
                    if json {
                        print_json(&json!({ "partitionable": t.is_some(), "triples": t }));
                    } else if let Some(t) = &t {
                        out!("yes");
                        for triple in t {
                            out!("{triple:?}");
                        }
                    } else {
                        out!("no");
                    }
                    Ok(if t.is_some() { OK } else { NO })
                }
                Err(e @ B2lcError::TooLarge { .. }) => limit(e),
                Err(e) => Err(e.into()),
            }
        }
        Command::Reduce(r) => run_reduce(r),
        Command::DepthCheck { graph, e, d, convention, mode, max_steps } => {
            let g = read_graph(graph)?;
            let conv = DepthConvention::from(*convention);
            match mode {
                DepthMode::Exact => match is_reducible(&g, *e, *d, conv, *max_steps) {
                    Ok(r) => {
                        if json {
                            print_json(&serde_json::to_value(&r)?);
                        } else if let Some(s) = &r.witness_set {
                            out!("reducible: remove {} (residual depth {})", ids(s), r.residual_depth);
                        } else {
                            out!("not reducible with {e} removals");
                        }
                        Ok(if r.reducible { OK } else { NO })
                    }
                    Err(err @ ReduceError::TooLarge { .. }) => limit(err),
                },
                DepthMode::Greedy => {
                    let s = greedy_reduce(&g, *d, conv);
                    let within = s.len() <= *e;
                    debug_assert!(verify_set(&g, &s, *d, conv));
                    if json {
                        print_json(&json!({ "set": s, "size": s.len(), "within_budget": within, "convention": conv }));
                    } else {
                        out!(
                            "greedy set of size {}: {}{}",
                            s.len(),
                            ids(&s),
                            if within { "" } else { " (over budget)" }
                        );
                    }
                    Ok(if within { OK } else { NO })
                }
            }
        }
        Command::Lp(l) => run_lp(json, l),
        Command::VerifyPaper { only, list } => {
            if *list {
                for (id, name) in suite::names() {
                    out!("{id:>2} {name}");
                }
                return Ok(OK);
            }
            let outcomes = if only.is_empty() {
                suite::run_all()
            } else {
                let mut out = Vec::new();
                for key in only {
                    out.push(suite::run(key).with_context(|| format!("no check named `{key}`; see --list"))?);
                }
                out
            };
            if json {
                let rows: Vec<Value> = outcomes
                    .iter()
                    .map(|o| {
                        json!({
                            "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail,
                            "seconds": o.elapsed.as_secs_f64(), "budget_seconds": o.budget.as_secs(),
                        })
                    })
                    .collect();
                print_json(&Value::Array(rows));
            } else {
                for o in &outcomes {
                    out!("{}", o.line());
                }
                let passed = outcomes.iter().filter(|o| o.passed).count();
                out!("{passed} of {} passed", outcomes.len());
            }
            Ok(if outcomes.iter().all(|o| o.passed) { OK } else { NO })
        }
    }
}

fn ids(s: &[NodeId]) -> String {
    let v: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn limit(e: impl std::fmt::Display) -> Result<u8> {
    eprintln!("limit reached: {e}");
    Ok(LIMIT)
}

fn report_search(json: bool, what: &str, r: Result<SearchResult, SearchError>) -> Result<u8> {
    match r {
        Ok(r) => {
            if json {
                print_json(&json!({
                    "optimum": r.optimum,
                    "proven": r.proven,
                    "expanded_states": r.expanded_states,
                    "cost": cost(&r.witness),
                    "witness": parse(&r.witness.to_json()),
                }));
            } else {
                out!("{what} {}{}", r.optimum, if r.proven { "" } else { " (not proven)" });
                out!("expanded states {}", r.expanded_states);
                for (i, round) in r.witness.rounds().iter().enumerate() {
                    let ids: Vec<String> = round.iter().map(ToString::to_string).collect();
                    out!("  {:>3}: {}", i + 1, ids.join(" "));
                }
            }
            Ok(OK)
        }
        Err(e @ (SearchError::Infeasible | SearchError::SeedBelowOptimum { .. })) => {
            if json {
                print_json(&json!({ "optimum": null, "reason": e.to_string() }));
            } else {
                out!("{e}");
            }
            Ok(NO)
        }
        Err(e @ SearchError::Exhausted { lower_bound, incumbent, .. }) => {
            if json {
                print_json(&json!({ "optimum": null, "lower_bound": lower_bound, "incumbent": incumbent }));
            }
            limit(e)
        }
        Err(e @ SearchError::TooLarge { .. }) => limit(e),
    }
}

fn run_reduce(r: &Reduce) -> Result<u8> {
    match r {
        Reduce::ThreePartToB2lc { instance } => {
            let (inst, warnings) = threepartition_to_b2lc(&read_3part(instance)?);
            for w in warnings {
                match w {
                    ReductionWarning::NotDivisible { n, total } => {
                        eprintln!("warning: n = {n} does not divide T = {total}; elements were scaled by n")
                    }
                }
            }
            out!("{}", inst.to_json());
        }
        Reduce::B2lcToGraph { instance, tau } => {
            let layout = b2lc_to_graph(&read_b2lc(instance)?, *tau)?;
            out!("{}", layout.to_json());
        }
        Reduce::Vc { graph, convention } => {
            let conv = DepthConvention::from(*convention);
            let r = vc_to_reducible(&read_undirected(graph)?, conv);
            let mut doc = parse(&r.dag.to_json());
            doc["originals"] = json!(r.originals);
            doc["convention"] = json!(conv);
            out!("{doc}");
        }
        Reduce::Indeg { graph, delta } => out!("{}", reduce_indegree(&read_graph(graph)?, *delta)?.to_json()),
        Reduce::AppendChain { graph, length } => out!("{}", append_chain(&read_graph(graph)?, *length)?.to_json()),
        Reduce::Counterexample => out!("{}", counterexample_dag().to_json()),
    }
    Ok(OK)
}

fn feasibility(json: bool, report: &FeasibilityReport) -> u8 {
    if json {
        print_json(&report.to_json());
    } else {
        out!("{} objective {}", if report.feasible { "feasible" } else { "infeasible" }, report.objective);
        for (name, slack) in report.violated.iter().take(20) {
            out!("  violated {name} by {}", -slack.clone());
        }
        if report.violated.len() > 20 {
            out!("  ... {} more", report.violated.len() - 20);
        }
    }
    if report.feasible {
        OK
    } else {
        NO
    }
}

fn summary(json: bool, m: &LpModel) {
    let integral = m.variables().iter().filter(|v| v.integer).count();
    if json {
        print_json(&json!({
            "variables": m.variables().len(),
            "integer_variables": integral,
            "constraints": m.constraints().len(),
            "zero_fixed": m.zero_fixed(),
        }));
    } else {
        out!("variables {} ({integral} integer, {} fixed to 0)", m.variables().len(), m.zero_fixed());
        out!("constraints {}", m.constraints().len());
    }
}

fn run_lp(json: bool, l: &Lp) -> Result<u8> {
    match l {
        Lp::BuildPebbling { graph, horizon } => summary(json, &build_pebbling_ip(&read_graph(graph)?, *horizon)),
        Lp::BuildReducible { graph, d } => summary(json, &build_reducible_ip(&read_graph(graph)?, *d)),
        Lp::Relax(m) => out_raw!("{}", emit(&relax(m.build()?))),
        Lp::Emit(m) => out_raw!("{}", emit(&m.build()?)),
        Lp::FracPebbling { graph, horizon, out } => {
            let g = read_graph(graph)?;
            let sol = fractional_pebbling_solution(&g, *horizon)?;
            write_solution(out, &sol)?;
            let report = verify_solution(&relax(build_pebbling_ip(&g, *horizon)), &sol)?;
            return Ok(feasibility(json, &report));
        }
        Lp::FracTimed { graph, out } => {
            let (sol, report) = fractional_timed_solution(&read_graph(graph)?);
            write_solution(out, &sol)?;
            return Ok(feasibility(json, &report));
        }
        Lp::FracReducible { graph, d, out } => {
            if *d == 0 {
                bail!("--d must be at least 1");
            }
            let g = read_graph(graph)?;
            let sol = fractional_reducible_solution(&g, *d);
            write_solution(out, &sol)?;
            let report = verify_solution(&relax(build_reducible_ip(&g, *d)), &sol)?;
            return Ok(feasibility(json, &report));
        }
        Lp::Verify { model, relaxed, solution } => {
            let m = model.build()?;
            let m = if *relaxed { relax(m) } else { m };
            let sol = LpSolution::from_json(&read(solution)?)?;
            return Ok(feasibility(json, &verify_solution(&m, &sol)?));
        }
        Lp::Gap(s) => {
            let r = gap_report(&read_graph(&s.graph)?, &s.limits());
            if json {
                print_json(&r.to_json());
            } else {
                out!("n {}", r.n);
                out!("fractional objective {}", r.fractional);
                out!("pcc {}{}", r.pcc, if r.pcc_proven { "" } else { " (upper bound only)" });
                out!("ratio {}", r.ratio);
                out!("gap lower bound {}", r.gap_lower_bound);
            }
        }
    }
    Ok(OK)
}
