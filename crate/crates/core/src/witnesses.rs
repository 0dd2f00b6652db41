//! Colourings that refute arrowing: the low-degree colouring for cycles and
//! the star colouring found by the sparse decomposition for paths, together
//! with an exact verifier for any claimed witness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::independence::max_independent_mask;
use crate::graph::search::{find_target, Embedding};
use crate::graph::{Color, Coloring, Graph, TargetPattern, VertexSet};

/// A total colouring claimed to avoid a red and a blue target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessColoring {
    pub coloring: Coloring,
    pub avoided_red: TargetPattern,
    pub avoided_blue: TargetPattern,
    pub provenance: String,
    /// Pairs that the generating rule treated as extra red edges; they are
    /// not part of the graph and not part of `coloring`.
    pub added_edges: Vec<(usize, usize)>,
}

/// Outcome of checking a total colouring against two targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verification {
    Good,
    Monochromatic { color: Color, copy: Embedding },
}

impl Verification {
    pub fn is_good(&self) -> bool {
        matches!(self, Verification::Good)
    }
}

/// Checks a total colouring: red must avoid `red`, blue must avoid `blue`.
pub fn check_total(g: &Graph, coloring: &Coloring, red: TargetPattern, blue: TargetPattern) -> Result<Verification> {
    coloring.check_domain(g)?;
    if let Some(i) = coloring.states().iter().position(Option::is_none) {
        let (u, v) = g.edge(i);
        return Err(Error::Incomplete { u, v });
    }
    for (pattern, color) in [(red, Color::Red), (blue, Color::Blue)] {
        if pattern.order() <= g.order() {
            if let Some(copy) = find_target(g, pattern, Some((coloring, color)))? {
                return Ok(Verification::Monochromatic { color, copy });
            }
        }
    }
    Ok(Verification::Good)
}

pub fn verify_witness(g: &Graph, w: &WitnessColoring) -> Result<Verification> {
    check_total(g, &w.coloring, w.avoided_red, w.avoided_blue)
}

/// The colouring that shows a graph on `n + d - 1` vertices with a vertex of
/// degree at most `d` does not arrow `(C_n, C_2d)`.
///
/// `v` is the lowest-id vertex of degree at most `d`; `w_1..w_d` are its
/// neighbours in ascending order, padded with the lowest-id non-neighbours
/// when `deg(v) < d`. Edges touching `w_1..w_{d-1}` and the edge `v w_d` are
/// red, all others blue.
pub fn low_degree_witness(g: &Graph, n: usize, d: usize) -> Result<WitnessColoring> {
    if d < 2 || n < 3 {
        return Err(Error::Precondition(format!("need d >= 2 and n >= 3, got n={n}, d={d}")));
    }
    if g.order() != n + d - 1 {
        return Err(Error::Precondition(format!("graph has {} vertices, expected n+d-1 = {}", g.order(), n + d - 1)));
    }
    let v = (0..g.order())
        .find(|&v| g.degree(v) <= d)
        .ok_or(Error::NoLowDegreeVertex { d, min_degree: g.min_degree().unwrap_or(0) })?;
    let mut ws: Vec<usize> = g.neighbors(v).collect();
    let mut added = Vec::new();
    for u in 0..g.order() {
        if ws.len() == d {
            break;
        }
        if u != v && !g.has_edge(u, v) {
            ws.push(u);
            added.push((u.min(v), u.max(v)));
        }
    }
    let mut red = VertexSet::new(g.order());
    for &w in &ws[..d - 1] {
        red.insert(w);
    }
    let last = ws[d - 1];
    let states = g
        .edges()
        .map(|(a, b)| {
            let is_red = red.contains(a) || red.contains(b) || (a.min(b), a.max(b)) == (v.min(last), v.max(last));
            Some(if is_red { Color::Red } else { Color::Blue })
        })
        .collect();
    let provenance = if added.is_empty() {
        format!("low_degree: v={v}, w={ws:?}")
    } else {
        format!("low_degree: v={v}, w={ws:?}, virtual edges {added:?}")
    };
    Ok(WitnessColoring {
        coloring: Coloring::from_states(states),
        avoided_red: TargetPattern::cycle(2 * d)?,
        avoided_blue: TargetPattern::cycle(n)?,
        provenance,
        added_edges: added,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    /// Maximal set, scanning vertices by ascending degree, ties by id.
    Greedy,
    /// Maximum set; at most [`EXACT_SCOPE_CAP`] scope vertices.
    Exact,
}

pub const EXACT_SCOPE_CAP: usize = 24;

/// Vertices of `scope` with pairwise distance greater than 2 in `h`.
pub fn distance3_independent_set(h: &Graph, scope: &VertexSet, mode: SelectionMode) -> Result<VertexSet> {
    if let Some(bad) = scope.iter().find(|&v| v >= h.order()) {
        return Err(Error::VertexOutOfRange { vertex: bad, order: h.order() });
    }
    let members = scope.to_vec();
    let mut out = VertexSet::new(h.order());
    match mode {
        SelectionMode::Greedy => {
            let mut order = members;
            order.sort_by_key(|&v| (h.degree(v), v));
            let mut blocked = VertexSet::new(h.order());
            for v in order {
                if blocked.contains(v) {
                    continue;
                }
                out.insert(v);
                blocked.insert(v);
                for w in h.neighbors(v) {
                    blocked.insert(w);
                    for x in h.neighbors(w) {
                        blocked.insert(x);
                    }
                }
            }
        }
        SelectionMode::Exact => {
            if members.len() > EXACT_SCOPE_CAP {
                return Err(Error::CapExceeded {
                    what: "exact distance-3 scope",
                    cap: EXACT_SCOPE_CAP,
                    got: members.len(),
                });
            }
            let mut conflict = vec![0u64; members.len()];
            for (i, &u) in members.iter().enumerate() {
                for (j, &v) in members.iter().enumerate().skip(i + 1) {
                    let close = h.has_edge(u, v) || h.row(u).iter().zip(h.row(v)).any(|(a, b)| a & b != 0);
                    if close {
                        conflict[i] |= 1 << j;
                        conflict[j] |= 1 << i;
                    }
                }
            }
            let all = (1u64 << members.len()) - 1;
            let best = max_independent_mask(&conflict, all);
            for (i, &v) in members.iter().enumerate() {
                if best >> i & 1 == 1 {
                    out.insert(v);
                }
            }
        }
    }
    Ok(out)
}

/// One round of the decomposition, in the ids of the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionStep {
    pub j: usize,
    /// `S_{j+1}`, chosen inside `G_j` with distances measured in `H_j`.
    pub selected: Vec<usize>,
    /// `X_j`.
    pub removed: Vec<usize>,
    /// `N_{H_j}(S_{j+1})`.
    pub neighbourhood: Vec<usize>,
    /// `|N_{H_j}(S_{j+1})| <= (|X_j| + b) s`.
    pub neighbourhood_bound_holds: bool,
    /// `|X_j| <= ((s+1)^j - 1) b`.
    pub removed_bound_holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Halting {
    /// `|S_{j+1}| > |X_j| + b` at step `j`; a witness was emitted.
    Witness { step: usize },
    /// `N_{H_t}(S_{t+1})` is empty.
    Exhausted { t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTrace {
    /// `s = 4|E|/|V|` as a reduced fraction.
    pub s_numer: u64,
    pub s_denom: u64,
    pub low_degree_vertices: Vec<usize>,
    pub steps: Vec<DecompositionStep>,
    pub halting: Halting,
    pub mode_used: Vec<SelectionMode>,
}

impl DecompositionTrace {
    pub fn s(&self) -> BigRational {
        BigRational::new(BigInt::from(self.s_numer), BigInt::from(self.s_denom))
    }

    /// Number of non-empty neighbourhood removals; the `t` of the recursion.
    pub fn rounds(&self) -> usize {
        match self.halting {
            Halting::Witness { step } => step,
            Halting::Exhausted { t } => t,
        }
    }
}

/// Runs the `H_j`/`G_j`/`X_j`/`S_j` recursion on `h`, which must have
/// `n + b - 1` vertices.
///
/// `S_{j+1}` is a maximum distance-3 set when `G_j` has at most
/// [`EXACT_SCOPE_CAP`] vertices and a greedy maximal one otherwise. When some
/// `|S_{j+1}| > |X_j| + b`, the edges of `H_j` at `S_{j+1}` are coloured red
/// and every other edge blue; that colouring has no red `P_4` and no blue
/// path on `n` vertices.
pub fn sparse_decomposition(h: &Graph, b: usize, n: usize) -> Result<(DecompositionTrace, Option<WitnessColoring>)> {
    if b == 0 || h.order() != n + b - 1 {
        return Err(Error::Precondition(format!("graph has {} vertices, expected n+b-1 = {}", h.order(), n + b - 1)));
    }
    let order = h.order();
    let s = BigRational::new(BigInt::from(4 * h.edge_count()), BigInt::from(order));
    let low: Vec<usize> = (0..order).filter(|&v| BigRational::from_integer(h.degree(v).into()) <= s).collect();
    let mut alive = VertexSet::full(order);
    let mut scope = VertexSet::from_iter_checked(order, low.iter().copied())?;
    let mut removed = VertexSet::new(order);
    let mut steps = Vec::new();
    let mut modes = Vec::new();
    let b_big = BigRational::from_integer(b.into());
    let mut growth = BigRational::one();
    for j in 0.. {
        let (hj, map) = h.induced_subgraph(&alive)?;
        let mut position = vec![usize::MAX; order];
        for (i, &v) in map.iter().enumerate() {
            position[v] = i;
        }
        let local_scope = VertexSet::from_iter_checked(hj.order(), scope.iter().map(|v| position[v]))?;
        let mode = if local_scope.len() <= EXACT_SCOPE_CAP { SelectionMode::Exact } else { SelectionMode::Greedy };
        modes.push(mode);
        let local = distance3_independent_set(&hj, &local_scope, mode)?;
        let selected: Vec<usize> = local.iter().map(|i| map[i]).collect();
        let mut nbhd = VertexSet::new(order);
        for i in local.iter() {
            for w in hj.neighbors(i) {
                nbhd.insert(map[w]);
            }
        }
        let x_size = removed.len();
        let neighbourhood_bound_holds =
            BigRational::from_integer(nbhd.len().into()) <= BigRational::from_integer((x_size + b).into()) * &s;
        let removed_bound_holds = BigRational::from_integer(x_size.into()) <= (&growth - BigRational::one()) * &b_big;
        steps.push(DecompositionStep {
            j,
            selected: selected.clone(),
            removed: removed.to_vec(),
            neighbourhood: nbhd.to_vec(),
            neighbourhood_bound_holds,
            removed_bound_holds,
        });
        if selected.len() > x_size + b {
            let sel = VertexSet::from_iter_checked(order, selected.iter().copied())?;
            let states = h
                .edges()
                .map(|(u, v)| {
                    let inside = alive.contains(u) && alive.contains(v);
                    let touches = sel.contains(u) || sel.contains(v);
                    Some(if inside && touches { Color::Red } else { Color::Blue })
                })
                .collect();
            let witness = WitnessColoring {
                coloring: Coloring::from_states(states),
                avoided_red: TargetPattern::path(4)?,
                avoided_blue: TargetPattern::path(n)?,
                provenance: format!("sparse_decomposition: step {j}, |S|={} > |X|+b={}", selected.len(), x_size + b),
                added_edges: Vec::new(),
            };
            let trace = trace_of(&s, low, steps, Halting::Witness { step: j }, modes);
            return Ok((trace, Some(witness)));
        }
        if nbhd.is_empty() {
            let trace = trace_of(&s, low, steps, Halting::Exhausted { t: j }, modes);
            return Ok((trace, None));
        }
        removed.union_with(&nbhd);
        alive.difference_with(&nbhd);
        scope.difference_with(&nbhd);
        growth *= &s + BigRational::one();
    }
    unreachable!("the loop returns once the neighbourhood is empty")
}

fn trace_of(
    s: &BigRational,
    low: Vec<usize>,
    steps: Vec<DecompositionStep>,
    halting: Halting,
    modes: Vec<SelectionMode>,
) -> DecompositionTrace {
    let to_u64 = |x: &BigInt| x.to_u64().expect("s fits in u64");
    let (s_numer, s_denom) = if s.is_zero() { (0, 1) } else { (to_u64(s.numer()), to_u64(s.denom())) };
    DecompositionTrace { s_numer, s_denom, low_degree_vertices: low, steps, halting, mode_used: modes }
}
