//! Hamilton cycles through prescribed paths, the connectivity/independence
//! criterion that guarantees them, and the blue-cycle extractor for
//! `(n, s, t)`-systems.

use serde::{Deserialize, Serialize};

use crate::constructions::NstSystem;
use crate::error::{Error, Result};
use crate::graph::connectivity::vertex_connectivity;
use crate::graph::independence::independence_number;
use crate::graph::search::{find_target, Embedding};
use crate::graph::{Color, Coloring, Graph, TargetPattern};

/// Largest host order accepted by [`hamilton_cycle_through_paths`].
pub const HAMILTON_CAP: usize = 64;

/// Vertex-disjoint paths given as vertex sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        PathSystem { paths }
    }

    pub fn edge_count(&self) -> usize {
        self.paths.iter().map(|p| p.len().saturating_sub(1)).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut used = vec![false; g.order()];
        for p in &self.paths {
            if p.is_empty() {
                return Err(Error::InvalidPathSystem("empty path".into()));
            }
            for &v in p {
                if v >= g.order() {
                    return Err(Error::VertexOutOfRange { vertex: v, order: g.order() });
                }
                if std::mem::replace(&mut used[v], true) {
                    return Err(Error::InvalidPathSystem(format!("vertex {v} lies on two paths")));
                }
            }
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(Error::InvalidPathSystem(format!("{} and {} are not adjacent", w[0], w[1])));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionCheck {
    pub kappa: usize,
    pub alpha: usize,
    pub m: usize,
    /// `kappa >= alpha + m`.
    pub holds: bool,
}

/// Evaluates `kappa(g) >= alpha(g) + m`; with `m = 0` this is the classical
/// sufficient condition for a Hamilton cycle.
pub fn che_ht_check(g: &Graph, m: usize) -> Result<CriterionCheck> {
    let kappa = vertex_connectivity(g)?;
    let alpha = independence_number(g)?;
    Ok(CriterionCheck { kappa, alpha, m, holds: kappa >= alpha + m })
}

/// A Hamilton cycle of `g` using every edge of `ps`, as a vertex sequence
/// starting at its lowest vertex, or `None` if there is none. Exact.
///
/// Each path is traversed as a unit once one of its ends is entered. Branches
/// are pruned when an unvisited vertex has too few usable neighbours or the
/// unvisited part is disconnected from the current end.
pub fn hamilton_cycle_through_paths(g: &Graph, ps: &PathSystem) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    if n > HAMILTON_CAP {
        return Err(Error::CapExceeded { what: "Hamilton search order", cap: HAMILTON_CAP, got: n });
    }
    ps.validate(g)?;
    if n < 3 {
        return Ok(None);
    }
    let adj = g.masks64().expect("order checked");
    let mut partner = vec![usize::MAX; n];
    let mut route: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut inner = 0u64;
    for p in ps.paths.iter().filter(|p| p.len() >= 2) {
        if p.len() == n {
            // One path through every vertex: only the closing edge is missing.
            let (a, b) = (p[0], p[n - 1]);
            return Ok(g.has_edge(a, b).then(|| canonical(p.clone())));
        }
        let (a, b) = (p[0], p[p.len() - 1]);
        partner[a] = b;
        partner[b] = a;
        route[a] = p.clone();
        route[b] = p.iter().rev().copied().collect();
        for &v in &p[1..p.len() - 1] {
            inner |= 1 << v;
        }
    }
    let start = (0..n).find(|&v| inner >> v & 1 == 0).expect("some vertex is a path end or free");
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut s = HamSearch { adj, partner, route, inner, start, all, cycle: Vec::new() };
    let mut cycle = vec![start];
    let mut visited = 1u64 << start;
    let cur = if s.partner[start] != usize::MAX {
        for &v in &s.route[start][1..] {
            cycle.push(v);
            visited |= 1 << v;
        }
        s.partner[start]
    } else {
        start
    };
    if s.extend(cur, visited, &mut cycle) {
        let c = std::mem::take(&mut s.cycle);
        debug_assert!(ps.edges().all(|(u, v)| cycle_has_edge(&c, u, v)));
        return Ok(Some(canonical(c)));
    }
    Ok(None)
}

struct HamSearch {
    adj: Vec<u64>,
    partner: Vec<usize>,
    route: Vec<Vec<usize>>,
    inner: u64,
    start: usize,
    all: u64,
    cycle: Vec<usize>,
}

impl HamSearch {
    /// Vertices a free step from `v` may go to.
    fn options(&self, v: usize, visited: u64) -> u64 {
        self.adj[v] & !visited & !self.inner
    }

    fn extend(&mut self, cur: usize, visited: u64, cycle: &mut Vec<usize>) -> bool {
        if visited == self.all {
            if self.adj[cur] >> self.start & 1 == 1 {
                self.cycle = cycle.clone();
                return true;
            }
            return false;
        }
        if !self.feasible(cur, visited) {
            return false;
        }
        let mut cands: Vec<(u32, usize)> = Vec::new();
        let mut opts = self.options(cur, visited);
        while opts != 0 {
            let w = opts.trailing_zeros() as usize;
            opts &= opts - 1;
            let exit = if self.partner[w] != usize::MAX { self.partner[w] } else { w };
            cands.push((self.options(exit, visited | 1 << w).count_ones(), w));
        }
        cands.sort_unstable();
        for (_, w) in cands {
            let len = cycle.len();
            let mut next_visited = visited;
            let exit = if self.partner[w] != usize::MAX {
                for &v in &self.route[w] {
                    cycle.push(v);
                    next_visited |= 1 << v;
                }
                self.partner[w]
            } else {
                cycle.push(w);
                next_visited |= 1 << w;
                w
            };
            if self.extend(exit, next_visited, cycle) {
                return true;
            }
            cycle.truncate(len);
        }
        false
    }

    /// Necessary conditions for completing the cycle from `cur`.
    fn feasible(&self, cur: usize, visited: u64) -> bool {
        let open = self.all & !visited;
        let ends = (1u64 << cur) | (1u64 << self.start);
        // Every unvisited free vertex needs two usable neighbours, every
        // unvisited path end one (its other side is the path).
        let mut rest = open & !self.inner;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let reach = (self.adj[v] & (open | ends) & !self.inner).count_ones();
            let need = if self.partner[v] != usize::MAX { 1 } else { 2 };
            if reach < need {
                return false;
            }
        }
        // The unvisited vertices must hang together with `cur`, moving along
        // edges and across path units.
        let mut seen = 1u64 << cur;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let mut next = self.adj[v] & open & !self.inner & !seen;
            let mut jumps = next;
            while jumps != 0 {
                let w = jumps.trailing_zeros() as usize;
                jumps &= jumps - 1;
                if self.partner[w] != usize::MAX {
                    next |= 1 << self.partner[w];
                }
            }
            seen |= next;
            frontier |= next;
        }
        open & !self.inner & !seen == 0
    }
}

fn cycle_has_edge(c: &[usize], u: usize, v: usize) -> bool {
    (0..c.len()).any(|i| {
        let (a, b) = (c[i], c[(i + 1) % c.len()]);
        (a, b) == (u, v) || (b, a) == (u, v)
    })
}

/// Rotates to start at the lowest vertex, then orients towards the smaller
/// neighbour.
fn canonical(mut c: Vec<usize>) -> Vec<usize> {
    let k = c.len();
    let pos = (0..k).min_by_key(|&i| c[i]).unwrap();
    c.rotate_left(pos);
    if k > 2 && c[k - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

/// Why the extractor gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionFailure {
    /// Some vertex outside `X` has too few blue neighbours in the clique
    /// (possible only below the clique-size threshold).
    FewBlueNeighbours,
    /// Distinct attachment vertices could not be chosen greedily.
    AttachmentStarved,
    /// The auxiliary graph has no Hamilton cycle through the azure edges.
    NoHamiltonCycle,
}

/// Intermediate choices of the extractor, in input vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    /// The `d - 1` vertices with the fewest blue clique neighbours.
    pub x: Vec<usize>,
    pub x_prime: Vec<usize>,
    /// Satellite paths trimmed to end outside `X` (empty when fully inside).
    pub trimmed: Vec<Vec<usize>>,
    /// `(a_i, b_i)` for each non-empty trimmed path, in path order.
    pub attachments: Vec<(usize, usize)>,
    pub min_blue_outside_x: usize,
    /// `4d + 2s`.
    pub claim_threshold: usize,
    pub at_threshold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Extraction {
    /// The colouring has a red `C_2d`; no blue cycle is sought.
    RedCycle {
        copy: Embedding,
    },
    BlueCycle {
        cycle: Vec<usize>,
        report: ExtractionReport,
    },
    Absent {
        failure: ExtractionFailure,
        report: ExtractionReport,
    },
}

/// Finds a red `C_2d` or a blue cycle on `n - d + 1` vertices in a total
/// colouring of an `(n, s, t)`-system.
///
/// `X` is chosen among all vertices by fewest blue clique neighbours (ties by
/// id), `X'` is the lowest `d'` clique vertices outside `X`, and the
/// attachment vertices are the lowest unused blue neighbours in the remaining
/// clique. When `t >= 10d + 4s` a vertex outside `X` with fewer than
/// `4d + 2s` blue clique neighbours is reported as an invariant violation;
/// below that size it is reported as [`ExtractionFailure::FewBlueNeighbours`].
pub fn extract_blue_cycle(sys: &NstSystem, total: &Coloring, d: usize) -> Result<Extraction> {
    let g = &sys.graph;
    let (n, s, t) = (sys.n, sys.s, sys.t);
    if d < 2 || 2 * d > n || d > n {
        return Err(Error::Precondition(format!("d = {d} out of range for n = {n}")));
    }
    total.check_extends(g, &sys.frozen)?;
    if let Some(copy) = find_target(g, TargetPattern::cycle(2 * d)?, Some((total, Color::Red)))? {
        return Ok(Extraction::RedCycle { copy });
    }
    let blue = |u: usize, v: usize| g.edge_index(u, v).is_some_and(|i| total.get(i) == Some(Color::Blue));
    let blue_k: Vec<usize> = (0..n).map(|v| (0..t).filter(|&c| c != v && blue(v, c)).count()).collect();
    let mut by_blue: Vec<usize> = (0..n).collect();
    by_blue.sort_by_key(|&v| (blue_k[v], v));
    let mut x: Vec<usize> = by_blue[..d - 1].to_vec();
    x.sort_unstable();
    let mut in_x = vec![false; n];
    for &v in &x {
        in_x[v] = true;
    }
    let mut report = ExtractionReport {
        x: x.clone(),
        claim_threshold: 4 * d + 2 * s,
        at_threshold: t >= 10 * d + 4 * s,
        min_blue_outside_x: (0..n).filter(|&v| !in_x[v]).map(|v| blue_k[v]).min().unwrap_or(0),
        ..ExtractionReport::default()
    };
    if report.min_blue_outside_x < report.claim_threshold {
        if report.at_threshold {
            return Err(Error::Invariant(format!(
                "vertex outside X has {} < 4d+2s blue clique neighbours without a red C_{}",
                report.min_blue_outside_x,
                2 * d
            )));
        }
        return Ok(Extraction::Absent { failure: ExtractionFailure::FewBlueNeighbours, report });
    }

    // Trim each satellite path to its longest subpath with both ends outside X.
    let trimmed: Vec<Vec<usize>> = sys
        .paths
        .iter()
        .map(|p| match (p.iter().position(|&v| !in_x[v]), p.iter().rposition(|&v| !in_x[v])) {
            (Some(a), Some(b)) => p[a..=b].to_vec(),
            _ => Vec::new(),
        })
        .collect();
    let d_prime = trimmed.iter().flatten().filter(|&&v| in_x[v]).count();
    let x_prime: Vec<usize> = (0..t).filter(|&v| !in_x[v]).take(d_prime).collect();
    if x_prime.len() < d_prime {
        return Ok(Extraction::Absent { failure: ExtractionFailure::AttachmentStarved, report });
    }
    report.trimmed = trimmed.clone();
    report.x_prime = x_prime.clone();
    let mut in_h = vec![false; n];
    for v in (0..t).filter(|&v| !in_x[v] && !x_prime.contains(&v)) {
        in_h[v] = true;
    }

    // Attachments: lowest unused blue neighbours inside H.
    let mut used = vec![false; n];
    let mut attach = Vec::new();
    for p in trimmed.iter().filter(|p| !p.is_empty()) {
        let (xe, ye) = (p[0], p[p.len() - 1]);
        let pick = |end: usize, used: &mut [bool]| {
            let a = (0..t).find(|&c| in_h[c] && !used[c] && blue(end, c))?;
            used[a] = true;
            Some(a)
        };
        match (pick(xe, &mut used), pick(ye, &mut used)) {
            (Some(a), Some(b)) => attach.push((a, b)),
            _ => {
                report.attachments = attach;
                return Ok(Extraction::Absent { failure: ExtractionFailure::AttachmentStarved, report });
            }
        }
    }
    report.attachments = attach.clone();

    // H': blue edges of H plus the azure matching, searched with the matching forced.
    let h_vertices: Vec<usize> = (0..t).filter(|&v| in_h[v]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in h_vertices.iter().enumerate() {
        local[v] = i;
    }
    let mut edges = Vec::new();
    for (i, &u) in h_vertices.iter().enumerate() {
        for &v in &h_vertices[i + 1..] {
            if blue(u, v) {
                edges.push((local[u], local[v]));
            }
        }
    }
    edges.extend(attach.iter().map(|&(a, b)| (local[a], local[b])));
    let h_prime = Graph::from_edges(h_vertices.len(), edges)?;
    let forced = PathSystem::new(attach.iter().map(|&(a, b)| vec![local[a], local[b]]).collect());
    let Some(local_cycle) = hamilton_cycle_through_paths(&h_prime, &forced)? else {
        return Ok(Extraction::Absent { failure: ExtractionFailure::NoHamiltonCycle, report });
    };

    // Replace each azure edge by its blue detour through the trimmed path.
    let detours: Vec<&Vec<usize>> = trimmed.iter().filter(|p| !p.is_empty()).collect();
    let cycle_h: Vec<usize> = local_cycle.iter().map(|&i| h_vertices[i]).collect();
    let k = cycle_h.len();
    let mut cycle = Vec::with_capacity(n);
    for i in 0..k {
        let (u, v) = (cycle_h[i], cycle_h[(i + 1) % k]);
        cycle.push(u);
        if let Some(j) = attach.iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
            if attach[j].0 == u {
                cycle.extend(detours[j].iter().copied());
            } else {
                cycle.extend(detours[j].iter().rev().copied());
            }
        }
    }
    let copy = Embedding { pattern: TargetPattern::cycle(cycle.len())?, vertices: cycle.clone() };
    if cycle.len() != n - d + 1 || !copy.is_valid_in(g, Some((total, Color::Blue))) {
        return Err(Error::Invariant(format!("spliced cycle on {} vertices failed verification", cycle.len())));
    }
    Ok(Extraction::BlueCycle { cycle, report })
}
