//! The `flowsched` command line: JSON in, JSON out, one subcommand per
//! solver family.
//!
//! Exit status: 0 success, 1 nothing admitted, 2 input error, 3 oracle
//! mismatch.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::generate;
use crate::interval_coloring::{color_offline_dsu, color_offline_sweep, Color, ColoredInterval, ColoredIntervalSet, ColoringOp};
use crate::oracle;
use crate::perm_count::{count_permutations, count_table, Count, CountMode};
use crate::revenue_path::{centroid_decomposition, solve_with, PathCandidate, RevenueInstance, TwoArmStrategy};
use crate::timeline::{SlotTimeline, TimelineSnapshot};
use crate::trace::{run_trace, BatchConfig, TraceEvent, TraceReport};
use crate::tree_aggregates::{
    EulerTour, LiftTables, Max, Min, Monoid, Sum, TreeSpec, WeightKind, WeightedRootedTree, Xor,
};
use crate::wireless_distribution::{
    mobile_makespan_bsearch, mobile_makespan_linear, sensor_duration, MobilePathInstance, SensorPathInstance,
    SensorRegime,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Largest horizon the DSU coloring will allocate for.
pub const DSU_SLOT_LIMIT: usize = 10_000_000;

/// Largest horizon the coloring oracle paints explicitly.
pub const PAINT_SLOT_LIMIT: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "flowsched", version, about = "Data-transfer scheduling solvers")]
struct Cli {
    /// Read the instance from FILE (`-` or absent: standard input).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Solver configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cross-check the answer against a brute-force oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Generate a random instance from this seed when no input is given.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay a request trace against a link timeline.
    Link {
        #[command(subcommand)]
        mode: LinkMode,
    },
    /// Color slot intervals.
    Color {
        #[command(subcommand)]
        method: ColorMethod,
    },
    /// Euler-tour and binary-lifting aggregates on a weighted tree.
    Tree {
        #[command(subcommand)]
        action: TreeAction,
    },
    /// Largest-revenue path under a cost cap.
    Revpath {
        #[command(subcommand)]
        action: RevpathAction,
    },
    /// Content dissemination on path networks.
    Wireless {
        #[command(subcommand)]
        model: WirelessModel,
    },
    /// Permutations of 1..=n with exactly k increasing 2-sequences.
    Permcount {
        #[arg(long)]
        n: usize,
        /// Omit to print the whole row P(n, 0..n).
        #[arg(long)]
        k: Option<usize>,
        /// Report residues modulo M instead of exact counts.
        #[arg(long)]
        modulus: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum LinkMode {
    /// Batches by the configured size and flush timeout.
    Batch,
    /// Every request handled on arrival.
    Online,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum ColorMethod {
    Online,
    Sweep,
    Dsu,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum TreeAction {
    /// Euler tour, positions, parents and levels.
    Build,
    /// Path, subtree and LCA queries.
    Query,
    /// Queries interleaved with weight updates.
    Update,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum RevpathAction {
    Solve,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum WirelessModel {
    /// Minimum makespan with mobile nodes.
    Mobile,
    /// Minimum round trip with release times.
    Sensor,
}

/// `link` input: the starting timeline and the request trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkInput {
    pub timeline: TimelineSnapshot,
    pub requests: Vec<TraceEvent>,
}

/// `color` input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorInput {
    #[serde(rename = "T")]
    pub slots: usize,
    #[serde(default)]
    pub initial: Color,
    pub ops: Vec<ColoringOp>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    #[default]
    Sum,
    Xor,
    Min,
    Max,
}

impl Aggregation {
    pub fn invertible(self) -> bool {
        matches!(self, Aggregation::Sum | Aggregation::Xor)
    }

    pub fn fold(self, values: &[i64]) -> Option<i64> {
        let f: fn(i64, i64) -> i64 = match self {
            Aggregation::Sum => |a, b| a + b,
            Aggregation::Xor => |a, b| a ^ b,
            Aggregation::Min => i64::min,
            Aggregation::Max => i64::max,
        };
        let folded = values.iter().copied().reduce(f);
        if self.invertible() {
            Some(folded.unwrap_or(0))
        } else {
            folded
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum TreeOp {
    PathFromRoot { v: usize },
    Path { u: usize, v: usize },
    Subtree { v: usize },
    Lca { u: usize, v: usize },
    /// Fold `delta` into the weight (invertible aggregations only).
    Add { v: usize, delta: i64 },
    Set { v: usize, w: i64 },
}

impl TreeOp {
    fn is_update(&self) -> bool {
        matches!(self, TreeOp::Add { .. } | TreeOp::Set { .. })
    }
}

/// `tree query` / `tree update` input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJob {
    pub tree: TreeSpec,
    #[serde(default)]
    pub agg: Aggregation,
    #[serde(default = "default_kind")]
    pub kind: WeightKind,
    pub ops: Vec<TreeOp>,
}

fn default_kind() -> WeightKind {
    WeightKind::Edge
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeBuildOutput {
    pub sequence: Vec<usize>,
    pub positions: Vec<[usize; 2]>,
    pub parent: Vec<Option<usize>>,
    pub level: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeOpsOutput {
    /// One entry per op; `null` for updates and for empty min/max paths.
    pub results: Vec<Option<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RevpathConfig {
    pub strategy: TwoArmStrategy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevpathOutput {
    pub best: Option<PathCandidate>,
    pub vertices: Vec<usize>,
    pub centroid_height: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobileConfig {
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobileOutput {
    pub makespan: f64,
    pub bsearch_makespan: f64,
    pub tmin: Vec<f64>,
    pub xmax: Vec<f64>,
    pub sender_pos: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorOutput {
    pub regime: SensorRegime,
    pub tmin: f64,
    pub total: f64,
}

#[derive(Debug)]
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// What a subcommand produced.
struct Outcome {
    json: String,
    rejected_only: bool,
    /// `Some(Err)` on oracle disagreement.
    verdict: Option<oracle::Verdict>,
}

impl Outcome {
    fn new(value: &impl Serialize) -> Self {
        let json = serde_json::to_string_pretty(value).expect("outputs serialize");
        Outcome { json, rejected_only: false, verdict: None }
    }
}

struct Context<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
}

impl Context<'_> {
    fn text(&mut self, path: &Option<PathBuf>) -> Result<String, Failure> {
        let mut text = String::new();
        match path {
            Some(p) if p.as_os_str() != "-" => {
                text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            }
            _ => {
                self.stdin.read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            }
        }
        Ok(text)
    }

    /// Reads the input document, or generates one when only `--seed` is set.
    fn input<T: DeserializeOwned>(&mut self, generator: impl FnOnce(&mut StdRng) -> T) -> Result<T, Failure> {
        if let (None, Some(seed)) = (&self.cli.input, self.cli.seed) {
            return Ok(generator(&mut StdRng::seed_from_u64(seed)));
        }
        let path = self.cli.input.clone();
        parse(&self.text(&path)?, "input")
    }

    fn config<T: DeserializeOwned>(&mut self) -> Result<Option<T>, Failure> {
        match self.cli.config.clone() {
            None => Ok(None),
            Some(p) => parse(&self.text(&Some(p))?, "config").map(Some),
        }
    }

    fn no_config(&self) -> Result<(), Failure> {
        match self.cli.config {
            Some(_) => Err(Failure::Input("this subcommand takes no --config".into())),
            None => Ok(()),
        }
    }
}

/// Typed parse reporting the JSON path of the first offending field.
fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Failure::Input(format!("{what}: at `{path}`: {}", e.into_inner()))
    })
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return status;
        }
    };
    let mut ctx = Context { cli: &cli, stdin };
    let outcome = match dispatch(&mut ctx) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INPUT;
        }
    };
    let _ = writeln!(stdout, "{}", outcome.json);
    match outcome.verdict {
        Some(Err(msg)) => {
            let _ = writeln!(stderr, "oracle mismatch: {msg}");
            return EXIT_MISMATCH;
        }
        Some(Ok(())) => {
            let _ = writeln!(stderr, "oracle: agree");
        }
        None => {}
    }
    if outcome.rejected_only {
        EXIT_REJECTED
    } else {
        EXIT_OK
    }
}

fn dispatch(ctx: &mut Context) -> Result<Outcome, Failure> {
    let Format::Json = ctx.cli.format;
    match &ctx.cli.command {
        Command::Link { mode } => link(ctx, *mode),
        Command::Color { method } => color(ctx, *method),
        Command::Tree { action } => tree(ctx, *action),
        Command::Revpath { action: RevpathAction::Solve } => revpath(ctx),
        Command::Wireless { model: WirelessModel::Mobile } => mobile(ctx),
        Command::Wireless { model: WirelessModel::Sensor } => sensor(ctx),
        Command::Permcount { n, k, modulus } => permcount(ctx, *n, *k, *modulus),
    }
}

fn link(ctx: &mut Context, mode: LinkMode) -> Result<Outcome, Failure> {
    let input: LinkInput = ctx.input(generate::link_input)?;
    let mut cfg = ctx.config::<BatchConfig>()?.unwrap_or_default();
    if let LinkMode::Online = mode {
        cfg.max_batch = 1;
    }
    cfg.validate()?;
    let mut tl = SlotTimeline::from_snapshot(&input.timeline, cfg.backend)?;
    let report: TraceReport = run_trace(&input.requests, &mut tl, &cfg)?;
    let mut out = Outcome::new(&report);
    out.rejected_only = !input.requests.is_empty() && report.granted == 0;
    if ctx.cli.oracle {
        let requests = input.requests.iter().map(TraceEvent::to_request).collect::<Result<Vec<_>, _>>()?;
        out.verdict = Some(oracle::check_trace(&input.timeline.avb, input.timeline.slot_duration, &requests, &report, cfg.unit_policy));
    }
    Ok(out)
}

fn color(ctx: &mut Context, method: ColorMethod) -> Result<Outcome, Failure> {
    ctx.no_config()?;
    let input: ColorInput = ctx.input(generate::color_input)?;
    let (slots, initial) = (input.slots, input.initial);
    let set = match method {
        ColorMethod::Online => {
            let mut set = ColoredIntervalSet::new(slots, initial)?;
            for &op in &input.ops {
                set.color_online(op)?;
            }
            set
        }
        ColorMethod::Sweep => color_offline_sweep(slots, &input.ops, initial)?,
        ColorMethod::Dsu => {
            if slots > DSU_SLOT_LIMIT {
                return Err(Failure::Input(format!("dsu coloring allocates per slot; T must be at most {DSU_SLOT_LIMIT}")));
            }
            color_offline_dsu(slots, &input.ops, initial)?
        }
    };
    let intervals: Vec<ColoredInterval> = set.intervals();
    let mut out = Outcome::new(&intervals);
    if ctx.cli.oracle {
        out.verdict = Some(if slots <= PAINT_SLOT_LIMIT {
            oracle::check_coloring(slots, &input.ops, initial, &intervals)
        } else {
            // too long to paint: the online structure is the reference
            let mut reference = ColoredIntervalSet::new(slots, initial)?;
            for &op in &input.ops {
                reference.color_online(op)?;
            }
            if reference.intervals() == intervals {
                Ok(())
            } else {
                Err("online and offline colorings differ".into())
            }
        });
    }
    Ok(out)
}

fn tree(ctx: &mut Context, action: TreeAction) -> Result<Outcome, Failure> {
    ctx.no_config()?;
    if let TreeAction::Build = action {
        let spec: TreeSpec = ctx.input(|rng| generate::tree_spec(rng, 10))?;
        let tree = spec.build()?;
        let tour = EulerTour::<Sum>::for_paths(&tree, WeightKind::Edge);
        let out = TreeBuildOutput {
            sequence: tour.sequence().to_vec(),
            positions: (0..tree.len()).map(|v| tour.positions(v).map(|(a, b)| [a, b])).collect::<Result<_, _>>()?,
            parent: (0..tree.len()).map(|v| tree.parent(v)).collect(),
            level: (0..tree.len()).map(|v| tree.level(v)).collect(),
        };
        let mut outcome = Outcome::new(&out);
        if ctx.cli.oracle {
            let rebuilt = crate::tree_aggregates::tour_from_positions(
                &out.positions.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>(),
            )?;
            outcome.verdict = Some(if rebuilt == out.sequence {
                Ok(())
            } else {
                Err("positions do not reproduce the tour".into())
            });
        }
        return Ok(outcome);
    }
    let updates = matches!(action, TreeAction::Update);
    let job: TreeJob = ctx.input(|rng| generate::tree_job(rng, updates))?;
    if let TreeAction::Query = action {
        if job.ops.iter().any(TreeOp::is_update) {
            return Err(Failure::Input("tree query takes no updates; use tree update".into()));
        }
    }
    let mut tree = job.tree.build()?;
    let results = match job.agg {
        Aggregation::Sum => {
            let tour = EulerTour::for_paths(&tree, job.kind);
            run_tree_ops::<Sum>(&mut tree, &job, Some(tour))?
        }
        Aggregation::Xor => {
            let tour = EulerTour::for_paths(&tree, job.kind);
            run_tree_ops::<Xor>(&mut tree, &job, Some(tour))?
        }
        Aggregation::Min => run_tree_ops::<Min>(&mut tree, &job, None)?,
        Aggregation::Max => run_tree_ops::<Max>(&mut tree, &job, None)?,
    };
    let out = TreeOpsOutput {
        results,
        tree: updates.then(|| TreeSpec::from_tree(&tree)),
    };
    let mut outcome = Outcome::new(&out);
    if ctx.cli.oracle {
        outcome.verdict = Some(check_tree_job(&job, &out.results));
    }
    Ok(outcome)
}

/// Replays `job.ops`; `path_tour` is present exactly for invertible
/// aggregations, otherwise path queries go through the lifting tables.
fn run_tree_ops<M: Monoid>(
    tree: &mut WeightedRootedTree,
    job: &TreeJob,
    mut path_tour: Option<EulerTour<M>>,
) -> Result<Vec<Option<i64>>, Failure> {
    let kind = job.kind;
    let mut subtree_tour = EulerTour::<M>::for_subtrees(tree, kind);
    let mut lifts: Option<LiftTables<M>> = None;
    let mut results = Vec::with_capacity(job.ops.len());
    for &op in &job.ops {
        if lifts.is_none() {
            lifts = Some(LiftTables::build(tree, kind));
        }
        let lt = lifts.as_ref().expect("just built");
        let value = match op {
            TreeOp::PathFromRoot { v } => match &path_tour {
                Some(t) => Some(t.path_from_root(v)?),
                None => lt.path_aggregate_static(tree.root(), v)?,
            },
            TreeOp::Path { u, v } => match &path_tour {
                Some(t) => Some(t.path_between(lt, u, v)?),
                None => lt.path_aggregate_static(u, v)?,
            },
            TreeOp::Subtree { v } => {
                let value = subtree_tour.subtree_aggregate(v)?;
                let empty = kind == WeightKind::Edge && tree.children(v).is_empty();
                (path_tour.is_some() || !empty).then_some(value)
            }
            TreeOp::Lca { u, v } => Some(lt.lca(u, v)? as i64),
            TreeOp::Add { v, delta } => {
                let Some(t) = path_tour.as_mut() else {
                    return Err(Failure::Input("add needs an invertible aggregation (sum or xor); use set".into()));
                };
                t.update_weight(v, delta)?;
                let w = t.weight(v)?;
                set_tree_weight(tree, kind, v, w)?;
                subtree_tour.set_weight(v, w)?;
                lifts = None;
                None
            }
            TreeOp::Set { v, w } => {
                if let Some(t) = path_tour.as_mut() {
                    t.set_weight(v, w)?;
                }
                subtree_tour.set_weight(v, w)?;
                set_tree_weight(tree, kind, v, w)?;
                lifts = None;
                None
            }
        };
        results.push(value);
    }
    Ok(results)
}

fn set_tree_weight(tree: &mut WeightedRootedTree, kind: WeightKind, v: usize, w: i64) -> crate::Result<()> {
    match kind {
        WeightKind::Edge => tree.set_edge_weight(v, w),
        WeightKind::Vertex => tree.set_vertex_weight(v, w),
    }
}

fn check_tree_job(job: &TreeJob, got: &[Option<i64>]) -> oracle::Verdict {
    let mut tree = job.tree.build().map_err(|e| e.to_string())?;
    let kind = job.kind;
    for (k, (&op, &answer)) in job.ops.iter().zip(got).enumerate() {
        let expected = match op {
            TreeOp::PathFromRoot { v } => job.agg.fold(&oracle::naive_path_weights(&tree, kind, tree.root(), v)),
            TreeOp::Path { u, v } => job.agg.fold(&oracle::naive_path_weights(&tree, kind, u, v)),
            TreeOp::Subtree { v } => job.agg.fold(&oracle::naive_subtree_weights(&tree, kind, v)),
            TreeOp::Lca { u, v } => Some(oracle::naive_lca(&tree, u, v) as i64),
            TreeOp::Add { v, delta } => {
                let old = tree.weight(v, kind).ok_or("root has no edge weight")?;
                let new = job.agg.fold(&[old, delta]).expect("two values");
                set_tree_weight(&mut tree, kind, v, new).map_err(|e| e.to_string())?;
                None
            }
            TreeOp::Set { v, w } => {
                set_tree_weight(&mut tree, kind, v, w).map_err(|e| e.to_string())?;
                None
            }
        };
        if expected != answer {
            return Err(format!("op {k} ({op:?}): expected {expected:?}, got {answer:?}"));
        }
    }
    Ok(())
}

fn revpath(ctx: &mut Context) -> Result<Outcome, Failure> {
    let inst: RevenueInstance = ctx.input(generate::revenue_instance)?;
    let strategy = ctx.config::<RevpathConfig>()?.map_or(TwoArmStrategy::Search, |c| c.strategy);
    let tree = inst.build()?;
    let best = solve_with(&tree, strategy)?;
    let vertices = match best {
        Some(b) => tree.path_vertices(b.u, b.v)?,
        None => Vec::new(),
    };
    let out = RevpathOutput { best, vertices, centroid_height: centroid_decomposition(&tree).height };
    let mut outcome = Outcome::new(&out);
    if ctx.cli.oracle {
        let expected = oracle::revenue_brute_force(&tree);
        let walked = match best {
            Some(b) => tree.walk_totals(&out.vertices).map(|t| t == (b.cost, b.revenue)).unwrap_or(false),
            None => true,
        };
        outcome.verdict = Some(match (best.map(|b| b.revenue) == expected, walked) {
            (true, true) => Ok(()),
            (false, _) => Err(format!("best revenue {:?}, exhaustive search found {expected:?}", best.map(|b| b.revenue))),
            (true, false) => Err("reported cost/revenue differ from the path walk".into()),
        });
    }
    Ok(outcome)
}

fn mobile(ctx: &mut Context) -> Result<Outcome, Failure> {
    let inst: MobilePathInstance = ctx.input(generate::mobile_instance)?;
    let eps = ctx.config::<MobileConfig>()?.map_or(1e-9, |c| c.eps);
    inst.validate()?;
    let schedule = mobile_makespan_linear(&inst)?;
    let bsearch = mobile_makespan_bsearch(&inst, inst.makespan_upper_bound(), eps)?;
    let out = MobileOutput {
        makespan: schedule.makespan(),
        bsearch_makespan: bsearch,
        tmin: schedule.tmin.clone(),
        xmax: schedule.xmax.clone(),
        sender_pos: schedule.sender_pos.clone(),
    };
    let mut outcome = Outcome::new(&out);
    if ctx.cli.oracle {
        let expected = oracle::mobile_makespan_pairs(&inst);
        let tol = 1e-6_f64.max(eps);
        outcome.verdict = Some(if (expected - out.makespan).abs() > tol || (expected - bsearch).abs() > tol {
            Err(format!("pairwise bound gives {expected}, solvers gave {} and {bsearch}", out.makespan))
        } else {
            schedule.verify(&inst, 1e-9).map_err(|e| e.to_string())
        });
    }
    Ok(outcome)
}

fn sensor(ctx: &mut Context) -> Result<Outcome, Failure> {
    ctx.no_config()?;
    let inst: SensorPathInstance = ctx.input(generate::sensor_instance)?;
    let (tmin, total) = sensor_duration(&inst)?;
    let out = SensorOutput { regime: inst.regime, tmin, total };
    let mut outcome = Outcome::new(&out);
    if ctx.cli.oracle {
        outcome.verdict = Some(match oracle::sensor_exhaustive(&inst) {
            Some(best) if (best - total).abs() <= 1e-9 * best.abs().max(1.0) => Ok(()),
            Some(best) => Err(format!("exhaustive search gives {best}, DP gives {total}")),
            None => Err(format!("more than {} nodes: too many decision vectors to enumerate", oracle::SENSOR_ENUMERATION_LIMIT)),
        });
    }
    Ok(outcome)
}

fn permcount(ctx: &mut Context, n: usize, k: Option<usize>, modulus: Option<u64>) -> Result<Outcome, Failure> {
    ctx.no_config()?;
    let mode = modulus.map_or(CountMode::ExactBigint, CountMode::Modular);
    let render = |c: &Count| match c {
        Count::Exact(v) => serde_json::Value::String(v.to_string()),
        Count::Modular(r) => serde_json::Value::from(*r),
    };
    let (value, got) = match k {
        Some(k) => {
            let c = count_permutations(n, k, mode)?;
            (serde_json::json!({ "count": render(&c) }), vec![(k, c)])
        }
        None => {
            let row = count_table(n, mode)?.rows.pop().expect("n >= 1");
            let counts: Vec<_> = row.iter().map(render).collect();
            (serde_json::json!({ "counts": counts }), row.into_iter().enumerate().collect())
        }
    };
    let mut outcome = Outcome::new(&value);
    if ctx.cli.oracle {
        outcome.verdict = Some(oracle::check_perm_counts(n, mode, &got));
    }
    Ok(outcome)
}
