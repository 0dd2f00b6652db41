use std::path::{Path, PathBuf};

use anyhow::bail;
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sizeramsey::arrowing::{arrows_check, arrows_via_cnf, export_dimacs, ramsey_number, ArrowingInstance, Budget};
use sizeramsey::constructions::{
    bound_table, cycle_blowup, nst_system, random_plus_clique, tree_closure, u_graph, BoundKind, Construction,
};
use sizeramsey::expansion::{is_good_pair, is_regular_pair, scaled_density, CheckMode, PairContext};
use sizeramsey::graph::codec::encode_graph6;
use sizeramsey::hamiltonicity::{extract_blue_cycle, Extraction};
use sizeramsey::scalar::parse_rational;
use sizeramsey::witnesses::{check_total, low_degree_witness, sparse_decomposition, verify_witness, WitnessColoring};
use sizeramsey::{Coloring, Error, Exact, Graph, Scalar, TargetPattern};

use crate::io::{read_coloring, read_graph, read_json, sha256_hex, write_graph, ColoringFile};
use crate::{Context, Outcome, Usage};

fn pattern(text: &str) -> anyhow::Result<TargetPattern> {
    Ok(text.parse::<TargetPattern>()?)
}

fn rational(name: &str, text: &str) -> anyhow::Result<Exact> {
    parse_rational(text).ok_or_else(|| Usage(format!("--{name}: {text:?} is not a rational number")).into())
}

fn need<T: Copy>(name: &str, value: Option<T>) -> anyhow::Result<T> {
    value.ok_or_else(|| Usage(format!("--{name} is required here")).into())
}

fn id_list(name: &str, text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Usage(format!("--{name}: bad entry {s:?}")).into()))
        .collect()
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum ConstructKind {
    UGraph,
    CycleBlowup,
    TreeClosure,
    Nst,
    RandomPlusClique,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Rational, e.g. `1/2` or `0.25`.
    #[arg(long)]
    pub eta: Option<String>,
    /// Tree size for `tree_closure`, vertex count of the random part otherwise.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Satellite path orders, comma separated.
    #[arg(long, default_value = "")]
    pub orders: String,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub clique: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn construct(ctx: &mut Context, a: &ConstructArgs) -> anyhow::Result<Outcome> {
    let mut extra = json!({});
    let (graph, report) = match a.kind {
        ConstructKind::UGraph => {
            let Construction { graph, report, .. } = u_graph(need("n", a.n)?, need("d", a.d)?)?;
            (graph, Some(report))
        }
        ConstructKind::CycleBlowup => {
            let eta = rational("eta", a.eta.as_deref().unwrap_or("1"))?;
            let c = cycle_blowup(need("n", a.n)?, need("d", a.d)?, &eta)?;
            extra["part_sizes"] = json!(c.parts.iter().map(|p| p.len()).collect::<Vec<_>>());
            (c.graph, Some(c.report))
        }
        ConstructKind::TreeClosure => {
            let t = tree_closure(need("count", a.count)?)?;
            extra["leaves"] = json!(t.leaves);
            (t.graph, None)
        }
        ConstructKind::Nst => {
            let orders = id_list("orders", &a.orders)?;
            let (n, s, t) = (need("n", a.n)?, need("s", a.s)?, need("t", a.t)?);
            let sys = nst_system(n, s, t, &orders)?;
            extra["system"] = json!({ "n": n, "s": s, "t": t, "path_orders": orders });
            extra["frozen"] = json!(ColoringFile::of(&sys.graph, &sys.frozen));
            (sys.graph, None)
        }
        ConstructKind::RandomPlusClique => {
            let g = random_plus_clique(need("count", a.count)?, need("p", a.p)?, a.clique, ctx.seed)?;
            (g, None)
        }
    };
    let g6 = encode_graph6(&graph);
    if let Some(out) = &a.out {
        write_graph(&mut ctx.files, out, &graph)?;
    }
    let negative = report.as_ref().is_some_and(|r| !r.satisfied);
    let mut payload = json!({
        "kind": a.kind,
        "vertices": graph.order(),
        "edges": graph.edge_count(),
        "graph6_sha256": sha256_hex(g6.as_bytes()),
        "report": report,
    });
    for (k, v) in extra.as_object().unwrap() {
        payload[k] = v.clone();
    }
    Ok(Outcome { payload, negative })
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowMethod {
    Search,
    Cnf,
}

#[derive(Args, Debug, Serialize)]
pub struct ArrowsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Target for red, e.g. `cycle:4`, `path:5`, `biclique:2:3`.
    #[arg(long)]
    pub red: String,
    #[arg(long)]
    pub blue: String,
    /// Pre-coloured edges as JSON `{"red": [[u,v],..], "blue": [..]}`.
    #[arg(long)]
    pub frozen: Option<PathBuf>,
    #[arg(long)]
    pub emit_cnf: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "search")]
    pub method: ArrowMethod,
    #[arg(long, default_value_t = 64)]
    pub max_uncolored: usize,
}

fn budget(ctx: &Context) -> Budget {
    Budget { max_nodes: ctx.budget, ..Budget::default() }
}

fn load_instance(
    ctx: &mut Context,
    input: &Path,
    red: &str,
    blue: &str,
    frozen: &Option<PathBuf>,
) -> anyhow::Result<ArrowingInstance> {
    let g = read_graph(&mut ctx.files, input)?;
    let frozen = match frozen {
        Some(path) => read_coloring(&mut ctx.files, path, &g)?,
        None => Coloring::uncolored(&g),
    };
    Ok(ArrowingInstance::with_frozen(g, pattern(red)?, pattern(blue)?, frozen)?)
}

fn instance_hash(inst: &ArrowingInstance) -> String {
    let frozen = serde_json::to_string(&ColoringFile::of(&inst.graph, &inst.frozen)).unwrap();
    sha256_hex(format!("{}\n{}\n{}\n{}\n", encode_graph6(&inst.graph), inst.red, inst.blue, frozen).as_bytes())
}

pub fn arrows(ctx: &mut Context, a: &ArrowsArgs) -> anyhow::Result<Outcome> {
    let inst = load_instance(ctx, &a.input, &a.red, &a.blue, &a.frozen)?;
    if let Some(path) = &a.emit_cnf {
        let export = export_dimacs(&inst, Budget::default().copy_cap)?;
        ctx.files.write(path, &export.dimacs())?;
    }
    let result = match a.method {
        ArrowMethod::Search => arrows_check(&inst, &Budget { max_uncolored: a.max_uncolored, ..budget(ctx) })?,
        ArrowMethod::Cnf => arrows_via_cnf(&inst, Budget::default().copy_cap)?,
    };
    let witness = result.good_coloring().map(|c| ColoringFile::of(&inst.graph, c));
    let payload = json!({
        "instance_hash": instance_hash(&inst),
        "verdict": if result.arrows() { "arrows" } else { "good_coloring" },
        "method": result.method,
        "stats": result.stats,
        "witness": witness,
    });
    Ok(Outcome { payload, negative: !result.arrows() })
}

#[derive(Args, Debug, Serialize)]
pub struct RamseyArgs {
    #[arg(long)]
    pub red: String,
    #[arg(long)]
    pub blue: String,
    #[arg(long = "max", default_value_t = 12)]
    pub max: usize,
}

pub fn ramsey(ctx: &mut Context, a: &RamseyArgs) -> anyhow::Result<Outcome> {
    let (red, blue) = (pattern(&a.red)?, pattern(&a.blue)?);
    let out = ramsey_number(red, blue, a.max, &budget(ctx))?;
    let witness = out.lower_witness.as_ref().map(|c| {
        let k = Graph::complete(out.value - 1).expect("smaller than an already built clique");
        ColoringFile::of(&k, c)
    });
    let stats: Vec<Value> = out.stats.iter().map(|(m, s)| json!({ "m": m, "stats": s })).collect();
    let payload = json!({
        "red": red.to_string(),
        "blue": blue.to_string(),
        "value": out.value,
        "lower_witness": witness,
        "stats": stats,
    });
    Ok(Outcome { payload, negative: false })
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    LowDegree,
    Sparse,
}

#[derive(Args, Debug, Serialize)]
pub struct WitnessArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub kind: WitnessKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub b: usize,
    /// Where to write the colouring as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn witness_json(g: &Graph, w: &WitnessColoring) -> Value {
    json!({
        "coloring": ColoringFile::of(g, &w.coloring),
        "avoided_red": w.avoided_red.to_string(),
        "avoided_blue": w.avoided_blue.to_string(),
        "provenance": w.provenance,
        "added_edges": w.added_edges,
    })
}

pub fn witness(ctx: &mut Context, a: &WitnessArgs) -> anyhow::Result<Outcome> {
    let g = read_graph(&mut ctx.files, &a.input)?;
    let (w, trace) = match a.kind {
        WitnessKind::LowDegree => match low_degree_witness(&g, a.n, need("d", a.d)?) {
            Ok(w) => (Some(w), Value::Null),
            Err(e @ Error::NoLowDegreeVertex { .. }) => (None, json!({ "reason": e.to_string() })),
            Err(e) => return Err(e.into()),
        },
        WitnessKind::Sparse => {
            let (trace, w) = sparse_decomposition(&g, a.b, a.n)?;
            (w, serde_json::to_value(&trace)?)
        }
    };
    let verification = match &w {
        Some(w) => Some(verify_witness(&g, w)?),
        None => None,
    };
    if let (Some(w), Some(out)) = (&w, &a.out) {
        ctx.files.write(out, &serde_json::to_string_pretty(&ColoringFile::of(&g, &w.coloring))?)?;
    }
    let payload = json!({
        "kind": a.kind,
        "witness": w.as_ref().map(|w| witness_json(&g, w)),
        "verification": verification,
        "trace": trace,
    });
    Ok(Outcome { payload, negative: w.is_none() })
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long)]
    pub red: String,
    #[arg(long)]
    pub blue: String,
}

pub fn verify(ctx: &mut Context, a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let g = read_graph(&mut ctx.files, &a.input)?;
    let c = read_coloring(&mut ctx.files, &a.coloring, &g)?;
    let v = check_total(&g, &c, pattern(&a.red)?, pattern(&a.blue)?)?;
    Ok(Outcome { negative: !v.is_good(), payload: json!({ "verification": v }) })
}

#[derive(serde::Deserialize)]
struct SystemFile {
    n: usize,
    s: usize,
    t: usize,
    #[serde(default)]
    path_orders: Vec<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct ExtractArgs {
    /// JSON `{"n":..,"s":..,"t":..,"path_orders":[..]}`.
    #[arg(long)]
    pub system: PathBuf,
    /// Total colouring of the system graph.
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long)]
    pub d: usize,
}

pub fn extract(ctx: &mut Context, a: &ExtractArgs) -> anyhow::Result<Outcome> {
    let spec: SystemFile = read_json(&mut ctx.files, &a.system)?;
    let sys = nst_system(spec.n, spec.s, spec.t, &spec.path_orders)?;
    let total = read_coloring(&mut ctx.files, &a.coloring, &sys.graph)?;
    let result = extract_blue_cycle(&sys, &total, a.d)?;
    let negative = !matches!(result, Extraction::BlueCycle { .. });
    Ok(Outcome { payload: json!({ "extraction": result }), negative })
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCheck {
    Density,
    Regular,
    Good,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    Exact,
    Sampled,
}

#[derive(Args, Debug, Serialize)]
pub struct PairArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Comma-separated vertex ids.
    #[arg(long)]
    pub v1: String,
    #[arg(long)]
    pub v2: String,
    #[arg(long, default_value = "1")]
    pub p: String,
    #[arg(long, value_enum, default_value = "density")]
    pub check: PairCheck,
    #[arg(long, default_value = "1/10")]
    pub eps: String,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: PairMode,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

pub fn pair(ctx: &mut Context, a: &PairArgs) -> anyhow::Result<Outcome> {
    let g = read_graph(&mut ctx.files, &a.input)?;
    let ctx_pair = PairContext::new(g, &id_list("v1", &a.v1)?, &id_list("v2", &a.v2)?, rational("p", &a.p)?)?;
    let eps = rational("eps", &a.eps)?;
    let density = scaled_density(&ctx_pair)?;
    let mut payload = json!({
        "check": a.check,
        "density": density.to_string(),
        "density_f64": density.to_f64_lossy(),
    });
    let negative = match a.check {
        PairCheck::Density => false,
        PairCheck::Regular => {
            let mode = match a.mode {
                PairMode::Exact => CheckMode::Exact,
                PairMode::Sampled => CheckMode::Sampled { trials: a.trials, seed: ctx.seed },
            };
            let v = is_regular_pair(&ctx_pair, &eps, mode)?;
            payload["verdict"] = serde_json::to_value(&v)?;
            matches!(v, sizeramsey::expansion::RegularityVerdict::Violated { .. })
        }
        PairCheck::Good => {
            let v = is_good_pair(&ctx_pair, &eps)?;
            payload["verdict"] = serde_json::to_value(&v)?;
            v != sizeramsey::expansion::GoodPairVerdict::Good
        }
    };
    Ok(Outcome { payload, negative })
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum BoundsKind {
    UGraph,
    CycleBlowup,
    Interval,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub kind: BoundsKind,
    /// Comma-separated values of `d`.
    #[arg(long)]
    pub d: String,
    /// Comma-separated values of `n`, or `start..end/step` (end inclusive).
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value = "1")]
    pub eta: String,
}

fn n_values(text: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((range, step)) = text.split_once('/') {
        let (lo, hi) = range.split_once("..").ok_or_else(|| Usage(format!("--n: bad range {text:?}")))?;
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Usage(format!("--n: bad number {s:?}")));
        let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
        if step == 0 {
            bail!(Usage("--n: step must be positive".into()));
        }
        return Ok((lo..=hi).step_by(step).collect());
    }
    id_list("n", text)
}

pub fn bounds(_ctx: &mut Context, a: &BoundsArgs) -> anyhow::Result<Outcome> {
    let ds = id_list("d", &a.d)?;
    let ns = n_values(&a.n)?;
    let grid: Vec<(usize, usize)> = ds.iter().flat_map(|&d| ns.iter().map(move |&n| (n, d))).collect();
    let kind = match a.kind {
        BoundsKind::UGraph => BoundKind::UGraph,
        BoundsKind::CycleBlowup => BoundKind::CycleBlowup { eta: rational("eta", &a.eta)? },
        BoundsKind::Interval => BoundKind::Interval,
    };
    let rows = bound_table::<Exact>(&kind, &grid)?;
    let negative = rows.iter().any(|r| !r.satisfied);
    Ok(Outcome { payload: json!({ "kind": a.kind, "rows": rows }), negative })
}

#[derive(Args, Debug, Serialize)]
pub struct EncodeSatArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub red: String,
    #[arg(long)]
    pub blue: String,
    #[arg(long)]
    pub frozen: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn encode_sat(ctx: &mut Context, a: &EncodeSatArgs) -> anyhow::Result<Outcome> {
    let inst = load_instance(ctx, &a.input, &a.red, &a.blue, &a.frozen)?;
    let export = export_dimacs(&inst, Budget::default().copy_cap)?;
    let text = export.dimacs();
    ctx.files.write(&a.out, &text)?;
    let var_edges: Vec<(usize, usize)> = export.var_edges.iter().map(|&e| inst.graph.edge(e)).collect();
    let payload = json!({
        "instance_hash": instance_hash(&inst),
        "vars": export.cnf.vars,
        "clauses": export.cnf.clauses.len(),
        "dimacs_sha256": sha256_hex(text.as_bytes()),
        "var_edges": var_edges,
    });
    Ok(Outcome { payload, negative: false })
}
