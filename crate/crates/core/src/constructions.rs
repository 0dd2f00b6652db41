//! Host graphs for the upper bounds: blow-ups of cycles and of closed binary
//! trees, `(n, s, t)`-systems, the ring of glued gadgets and seeded random
//! hosts, each with a report comparing its size against the matching bound.

use std::collections::BTreeMap;
use std::ops::Range;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::search::find_target;
use crate::graph::{Color, Coloring, Graph, TargetPattern, VertexSet, MAX_ORDER};
use crate::rng;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Replacement {
    Clique,
    IndependentSet,
}

#[derive(Clone, Debug)]
pub struct BlowupSpec {
    pub base: Graph,
    pub part_sizes: Vec<usize>,
    pub replacement: Replacement,
}

impl BlowupSpec {
    pub fn validate(&self) -> Result<()> {
        if self.part_sizes.len() != self.base.order() {
            return Err(Error::Precondition(format!(
                "{} part sizes for a base graph of order {}",
                self.part_sizes.len(),
                self.base.order()
            )));
        }
        if let Some(i) = self.part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::Precondition(format!("part {i} is empty")));
        }
        let total: usize = self.part_sizes.iter().sum();
        if total > MAX_ORDER {
            return Err(Error::OrderOverflow { order: total, cap: MAX_ORDER });
        }
        Ok(())
    }

    /// Edge count of the blow-up from the part sizes alone.
    pub fn predicted_edges(&self) -> u64 {
        let s = &self.part_sizes;
        let inner: u64 = match self.replacement {
            Replacement::Clique => s.iter().map(|&k| (k * k.saturating_sub(1) / 2) as u64).sum(),
            Replacement::IndependentSet => 0,
        };
        inner + self.base.edges().map(|(u, v)| (s[u] * s[v]) as u64).sum::<u64>()
    }
}

/// A blow-up together with the vertex range occupied by each base vertex.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub graph: Graph,
    pub parts: Vec<Range<usize>>,
}

pub fn blow_up(spec: &BlowupSpec) -> Result<Blowup> {
    spec.validate()?;
    let mut parts = Vec::with_capacity(spec.part_sizes.len());
    let mut next = 0;
    for &size in &spec.part_sizes {
        parts.push(next..next + size);
        next += size;
    }
    let mut edges = Vec::new();
    if spec.replacement == Replacement::Clique {
        for part in &parts {
            for u in part.clone() {
                edges.extend((u + 1..part.end).map(|v| (u, v)));
            }
        }
    }
    for (a, b) in spec.base.edges() {
        for u in parts[a].clone() {
            edges.extend(parts[b].clone().map(|v| (u, v)));
        }
    }
    let graph = Graph::from_edges(next, edges)?;
    debug_assert_eq!(graph.edge_count() as u64, spec.predicted_edges());
    Ok(Blowup { graph, parts })
}

/// Size of a construction set against the bound it is meant to meet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub params: BTreeMap<String, f64>,
    pub vertices: u64,
    pub edges: u64,
    /// Value the edge count is compared with (for `interval`, the upper formula).
    pub bound: f64,
    pub bound_name: String,
    /// Lower formula; present only for `interval` rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    pub satisfied: bool,
}

/// A built host graph with its part map and size report.
#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: Graph,
    pub parts: Vec<Range<usize>>,
    pub report: ConstructionReport,
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Blow-up of the cycle `C_{2s}` with `s = floor(eta n / 4d)` into cliques of
/// balanced sizes summing to `n + 2sd`.
///
/// The report checks `|V| <= (1 + eta) n` and `|E| < 20 d n / eta`; both
/// comparisons are carried out in `T`, so with an exact scalar they are exact.
pub fn cycle_blowup<T: Scalar>(n: usize, d: usize, eta: &T) -> Result<Construction> {
    let zero = T::zero();
    let one = T::one();
    if d < 2 {
        return Err(Error::Precondition(format!("d must be at least 2, got {d}")));
    }
    if !(*eta > zero && *eta <= one) {
        return Err(Error::Precondition(format!("eta must lie in (0, 1], got {eta}")));
    }
    let nt = T::from_count(n as u64);
    let dt = T::from_count(d as u64);
    if eta.clone() * nt.clone() < T::from_count(8 * d as u64) {
        return Err(Error::Precondition(format!("n = {n} is below 8d/eta")));
    }
    let s = (eta.clone() * nt.clone() / T::from_count(4 * d as u64)).floor_int() as usize;
    if s < 2 {
        return Err(Error::Precondition(format!("s = {s} leaves no simple cycle C_2s to blow up")));
    }
    let lo = (dt.clone() / eta.clone()).ceil_int() as usize;
    let hi = (T::from_count(12 * d as u64) / eta.clone()).floor_int() as usize;
    let total = n + 2 * s * d;
    let count = 2 * s;
    let (base_size, extra) = (total / count, total % count);
    let part_sizes: Vec<usize> = (0..count).map(|i| base_size + usize::from(i < extra)).collect();
    if part_sizes.iter().any(|&k| k < lo || k > hi) {
        return Err(Error::Precondition(format!(
            "no balanced split of {total} vertices into {count} parts with sizes in [{lo}, {hi}]"
        )));
    }
    let spec = BlowupSpec { base: Graph::cycle(count)?, part_sizes, replacement: Replacement::Clique };
    let Blowup { graph, parts } = blow_up(&spec)?;
    let vertices = graph.order() as u64;
    let edges = graph.edge_count() as u64;
    let bound = T::from_count(20 * (d * n) as u64) / eta.clone();
    let vertex_ok = T::from_count(vertices) <= (one + eta.clone()) * nt;
    let edge_ok = T::from_count(edges) * eta.clone() < T::from_count(20 * (d * n) as u64);
    let report = ConstructionReport {
        construction: "cycle_blowup".into(),
        params: params(&[("n", n as f64), ("d", d as f64), ("eta", eta.to_f64_lossy()), ("s", s as f64)]),
        vertices,
        edges,
        bound: bound.to_f64_lossy(),
        bound_name: "20dn/eta".into(),
        lower: None,
        satisfied: vertex_ok && edge_ok,
    };
    Ok(Construction { graph, parts, report })
}

/// The closure of the binary tree `T_N` and its leaves.
#[derive(Clone, Debug)]
pub struct TreeClosure {
    pub graph: Graph,
    /// Childless vertices of `T_N`, ascending.
    pub leaves: Vec<usize>,
    /// `parent[v]` for `v > 0`; the root has none.
    pub parent: Vec<Option<usize>>,
}

/// `T_N` laid out in heap order (children of `i` are `2i+1`, `2i+2`): the
/// first `N` positions of a perfect binary tree, so the last level is filled
/// from the left. The closure joins every vertex to all its descendants.
pub fn tree_closure(count: usize) -> Result<TreeClosure> {
    if count == 0 {
        return Err(Error::Precondition("tree closure needs N >= 1".into()));
    }
    if count > MAX_ORDER {
        return Err(Error::OrderOverflow { order: count, cap: MAX_ORDER });
    }
    let parent: Vec<Option<usize>> = (0..count).map(|v| (v > 0).then(|| (v - 1) / 2)).collect();
    let mut edges = Vec::new();
    for v in 1..count {
        let mut a = parent[v];
        while let Some(u) = a {
            edges.push((u, v));
            a = parent[u];
        }
    }
    let leaves = (0..count).filter(|&v| 2 * v + 1 >= count).collect();
    Ok(TreeClosure { graph: Graph::from_edges(count, edges)?, leaves, parent })
}

/// `U(n, d)`: the closure of `T_N`, `N = floor((n+d-1)/14d)`, with each vertex
/// replaced by a clique on `14d` vertices, except the last (deepest, rightmost)
/// leaf, which absorbs the remainder so the total is exactly `n + d - 1`.
///
/// `satisfied` certifies `|E| <= 20 d n log2(n/d)` against the lower end of a
/// rational bracket for the logarithm, so it is never reported true wrongly.
pub fn u_graph(n: usize, d: usize) -> Result<Construction> {
    if d < 2 || n < 14 * d {
        return Err(Error::Precondition(format!("U(n,d) needs n >= 14d >= 28, got n={n}, d={d}")));
    }
    let total = n + d - 1;
    if total > MAX_ORDER {
        return Err(Error::OrderOverflow { order: total, cap: MAX_ORDER });
    }
    let count = total / (14 * d);
    let tree = tree_closure(count)?;
    let mut part_sizes = vec![14 * d; count];
    part_sizes[count - 1] = total - 14 * d * (count - 1);
    let spec = BlowupSpec { base: tree.graph, part_sizes, replacement: Replacement::Clique };
    let Blowup { graph, parts } = blow_up(&spec)?;
    let edges = graph.edge_count() as u64;
    let ratio = BigRational::new((n as i64).into(), (d as i64).into());
    let (log_lo, _) = ratio.log2_bounds();
    let coeff = BigRational::from_integer((20 * d * n).into());
    let satisfied = BigRational::from_integer(edges.into()) <= &coeff * &log_lo;
    let bound = 20.0 * (d * n) as f64 * (n as f64 / d as f64).log2();
    let report = ConstructionReport {
        construction: "u_graph".into(),
        params: params(&[("n", n as f64), ("d", d as f64), ("N", count as f64)]),
        vertices: graph.order() as u64,
        edges,
        bound,
        bound_name: "20dn*log2(n/d)".into(),
        lower: None,
        satisfied,
    };
    Ok(Construction { graph, parts, report })
}

/// A central clique with vertex-disjoint satellite paths, every satellite
/// vertex joined to the whole clique. Path edges are frozen blue.
#[derive(Clone, Debug)]
pub struct NstSystem {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub graph: Graph,
    /// Clique vertices are `0..t`.
    pub clique: Vec<usize>,
    /// Satellite paths as vertex sequences, in the order given.
    pub paths: Vec<Vec<usize>>,
    pub frozen: Coloring,
}

impl NstSystem {
    pub fn path_orders(&self) -> Vec<usize> {
        self.paths.iter().map(Vec::len).collect()
    }
}

pub fn nst_system(n: usize, s: usize, t: usize, path_orders: &[usize]) -> Result<NstSystem> {
    if path_orders.len() != s {
        return Err(Error::Precondition(format!("{} path orders given for s = {s}", path_orders.len())));
    }
    if path_orders.contains(&0) {
        return Err(Error::Precondition("satellite paths need at least one vertex".into()));
    }
    let sum: usize = path_orders.iter().sum();
    if t + sum != n {
        return Err(Error::Precondition(format!("t + sum of path orders = {} but n = {n}", t + sum)));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow { order: n, cap: MAX_ORDER });
    }
    let mut edges: Vec<(usize, usize)> = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))).collect();
    let mut paths = Vec::with_capacity(s);
    let mut next = t;
    for &k in path_orders {
        let path: Vec<usize> = (next..next + k).collect();
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        for &x in &path {
            edges.extend((0..t).map(|c| (c, x)));
        }
        next += k;
        paths.push(path);
    }
    let graph = Graph::from_edges(n, edges)?;
    let mut frozen = Coloring::uncolored(&graph);
    for path in &paths {
        for w in path.windows(2) {
            frozen.set_pair(&graph, w[0], w[1], Some(Color::Blue))?;
        }
    }
    Ok(NstSystem { n, s, t, graph, clique: (0..t).collect(), paths, frozen })
}

/// `2r` copies of `gadget` glued in a ring of vertex classes `W_1..W_2r`.
///
/// Odd classes have `ceil(N/2)` vertices and even ones `floor(N/2)`. The copy
/// on `W_i ∪ W_{i+1}` (and on `W_2r ∪ W_1` to close the ring) sends gadget
/// vertices in id order onto `W_i` ascending, then onto `W_{i+1}` ascending.
pub fn ring_glue(gadget: &Graph, r: usize) -> Result<Graph> {
    let order = gadget.order();
    if r < 2 || order < 2 {
        return Err(Error::Precondition(format!("ring glue needs r >= 2 and N >= 2, got r={r}, N={order}")));
    }
    let sizes: Vec<usize> = (0..2 * r).map(|i| if i % 2 == 0 { order.div_ceil(2) } else { order / 2 }).collect();
    let mut start = vec![0; 2 * r + 1];
    for i in 0..2 * r {
        start[i + 1] = start[i] + sizes[i];
    }
    let total = start[2 * r];
    if total > MAX_ORDER {
        return Err(Error::OrderOverflow { order: total, cap: MAX_ORDER });
    }
    let mut edges = Vec::new();
    for i in 0..2 * r {
        let j = (i + 1) % (2 * r);
        let embed = |x: usize| if x < sizes[i] { start[i] + x } else { start[j] + x - sizes[i] };
        edges.extend(gadget.edges().map(|(u, v)| (embed(u), embed(v))));
    }
    Graph::from_edges(total, edges)
}

/// `G(N, p)` joined completely to a new clique on `clique_size` vertices.
///
/// Pairs `(u, v)`, `u < v`, are visited in lexicographic order and each draws
/// one uniform from the stream of [`rng::seeded`]; the pair is an edge iff the
/// draw is below `p`. Clique vertices are `N..N+clique_size`.
pub fn random_plus_clique(count: usize, p: f64, clique_size: usize, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("p must lie in [0, 1], got {p}")));
    }
    let total = count + clique_size;
    if total > MAX_ORDER {
        return Err(Error::OrderOverflow { order: total, cap: MAX_ORDER });
    }
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..count {
        for v in u + 1..count {
            if rng::unit_f64(&mut rng) < p {
                edges.push((u, v));
            }
        }
    }
    for c in count..total {
        edges.extend((0..c).map(|u| (u, c)));
    }
    Graph::from_edges(total, edges)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub trials: usize,
    pub hits: usize,
    pub fraction: f64,
}

/// Fraction of uniformly sampled `subset_size`-subsets whose induced subgraph
/// contains a cycle of length exactly `cycle_len`. Diagnostic only.
pub fn sampled_cycle_density_check(
    g: &Graph,
    subset_size: usize,
    cycle_len: usize,
    trials: usize,
    seed: u64,
) -> Result<DensitySample> {
    if subset_size > g.order() {
        return Err(Error::Precondition(format!("subset size {subset_size} exceeds order {}", g.order())));
    }
    let pattern = TargetPattern::cycle(cycle_len)?;
    let mut rng = rng::seeded(seed);
    let mut hits = 0;
    for _ in 0..trials {
        let chosen = rand::seq::index::sample(&mut rng, g.order(), subset_size);
        let set = VertexSet::from_iter_checked(g.order(), chosen.iter())?;
        let (sub, _) = g.induced_subgraph(&set)?;
        if cycle_len <= sub.order() && find_target(&sub, pattern, None)?.is_some() {
            hits += 1;
        }
    }
    let fraction = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
    Ok(DensitySample { trials, hits, fraction })
}

/// Which bound a table row checks.
#[derive(Clone, Debug)]
pub enum BoundKind<T> {
    UGraph,
    CycleBlowup {
        eta: T,
    },
    /// `n max{(d+1)/2, log2(n/d) / (8 log2 log2(n/d))} <= 20 d n log2(n/d)`.
    Interval,
}

/// Lower and upper formulas of the interval for `r*(C_n, C_2d)`.
#[derive(Clone, Debug)]
pub struct IntervalBounds<T> {
    /// An upper estimate of the lower formula.
    pub lower: T,
    /// A lower estimate of the upper formula.
    pub upper: T,
}

impl<T: Scalar> IntervalBounds<T> {
    /// True when the lower formula provably does not exceed the upper one.
    pub fn consistent(&self) -> bool {
        self.lower <= self.upper
    }
}

/// Evaluates both sides of the interval, rounding each the pessimistic way
/// through the `log2` bracket of `T`. Requires `d >= 2`, `n >= 64d`.
pub fn interval_bounds<T: Scalar>(n: usize, d: usize) -> Result<IntervalBounds<T>> {
    if d < 2 || n < 64 * d {
        return Err(Error::Precondition(format!("interval needs d >= 2 and n >= 64d, got n={n}, d={d}")));
    }
    let nt = T::from_count(n as u64);
    let x = T::ratio(n as i64, d as i64);
    let (log_lo, log_hi) = x.log2_bounds();
    let (loglog_lo, _) = log_lo.log2_bounds();
    let first = T::ratio(d as i64 + 1, 2);
    let second = log_hi / (T::from_count(8) * loglog_lo);
    let lower = nt.clone() * T::max_of(first, second);
    let upper = T::from_count(20 * d as u64) * nt * log_lo;
    Ok(IntervalBounds { lower, upper })
}

/// One report per `(n, d)` grid point.
pub fn bound_table<T: Scalar>(kind: &BoundKind<T>, grid: &[(usize, usize)]) -> Result<Vec<ConstructionReport>> {
    grid.iter()
        .map(|&(n, d)| match kind {
            BoundKind::UGraph => Ok(u_graph(n, d)?.report),
            BoundKind::CycleBlowup { eta } => Ok(cycle_blowup(n, d, eta)?.report),
            BoundKind::Interval => {
                let b = interval_bounds::<T>(n, d)?;
                Ok(ConstructionReport {
                    construction: "interval".into(),
                    params: params(&[("n", n as f64), ("d", d as f64)]),
                    vertices: n as u64,
                    edges: 0,
                    bound: b.upper.to_f64_lossy(),
                    bound_name: "20dn*log2(n/d)".into(),
                    lower: Some(b.lower.to_f64_lossy()),
                    satisfied: b.consistent(),
                })
            }
        })
        .collect()
}
