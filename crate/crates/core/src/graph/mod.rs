//! Dense undirected simple graphs with bitset adjacency rows, plus the exact
//! structural detectors every other module leans on.

mod bitset;
pub mod codec;
mod coloring;
pub mod connectivity;
pub mod independence;
pub mod paths;
mod pattern;
pub mod search;

pub use bitset::VertexSet;
pub use coloring::{Color, Coloring};
pub use pattern::TargetPattern;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 4096;

/// Immutable simple graph on vertices `0..order`.
///
/// Adjacency is stored as one bitset row per vertex; the canonical edge list
/// (pairs `(u, v)` with `u < v`, sorted) fixes the edge indexing used by
/// [`Coloring`] and by the CNF variable numbering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    edges: Vec<(u32, u32)>,
    // Index of the first edge (u, *) in `edges`.
    row_offset: Vec<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("order", &self.order).field("edges", &self.edges).finish()
    }
}

impl Graph {
    pub fn empty(order: usize) -> Result<Self> {
        Self::from_edges(order, std::iter::empty())
    }

    pub fn complete(order: usize) -> Result<Self> {
        Self::from_edges(order, (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v))))
    }

    /// Cycle `0-1-...-(k-1)-0`; `k >= 3`.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::Precondition(format!("cycle needs at least 3 vertices, got {k}")));
        }
        Self::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Result<Self> {
        Self::from_edges(k, (1..k).map(|i| (i - 1, i)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn star(leaves: usize) -> Result<Self> {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).expect("petersen is valid")
    }

    /// Builds a graph from unordered pairs. Duplicate pairs collapse; self
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow { order, cap: MAX_ORDER });
        }
        let words = order.div_ceil(64).max(1);
        let mut rows = vec![0u64; words * order];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(Error::VertexOutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            rows[u * words + v / 64] |= 1u64 << (v % 64);
            rows[v * words + u / 64] |= 1u64 << (u % 64);
        }
        Ok(Self::from_rows(order, words, rows))
    }

    fn from_rows(order: usize, words: usize, rows: Vec<u64>) -> Self {
        let mut edges = Vec::new();
        let mut row_offset = Vec::with_capacity(order + 1);
        for u in 0..order {
            row_offset.push(edges.len() as u32);
            let row = &rows[u * words..(u + 1) * words];
            for v in bitset::iter_bits(row) {
                if v > u {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        row_offset.push(edges.len() as u32);
        Self { order, words, rows, edges, row_offset }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Canonical edge `i` as `(u, v)` with `u < v`.
    #[inline]
    pub fn edge(&self, i: usize) -> (usize, usize) {
        let (u, v) = self.edges[i];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    /// Position of `{u, v}` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if !self.has_edge(u, v) {
            return None;
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        let row = self.row(u);
        // Count neighbours w of u with u < w < v.
        let mut rank = 0usize;
        for (wi, &word) in row.iter().enumerate() {
            let base = wi * 64;
            if base >= v {
                break;
            }
            let mut w = word;
            if base <= u {
                let shift = u - base + 1;
                w &= if shift >= 64 { 0 } else { !0u64 << shift };
            }
            if v < base + 64 {
                w &= (1u64 << (v - base)) - 1;
            }
            rank += w.count_ones() as usize;
        }
        Some(self.row_offset[u] as usize + rank)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bitset::iter_bits(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.order, self.row(v).to_vec())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.order).map(|v| self.degree(v)).min()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.order * self.order.saturating_sub(1) / 2
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Adjacency rows as single words; only for graphs of order at most 64.
    pub(crate) fn masks64(&self) -> Option<Vec<u64>> {
        (self.order <= 64).then(|| (0..self.order).map(|v| self.row(v)[0]).collect())
    }

    /// Spanning subgraph keeping only the edges for which `keep` holds.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(usize) -> bool) -> Graph {
        let mut rows = vec![0u64; self.rows.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if keep(i) {
                let (u, v) = (u as usize, v as usize);
                rows[u * self.words + v / 64] |= 1u64 << (v % 64);
                rows[v * self.words + u / 64] |= 1u64 << (u % 64);
            }
        }
        Graph::from_rows(self.order, self.words, rows)
    }

    /// Same vertex set with `extra` edges added.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Graph::from_edges(self.order, self.edges().chain(extra))
    }

    /// Subgraph induced by `set`; vertex `i` of the result is `map[i]` here.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if set.universe() > self.order {
            if let Some(bad) = set.iter().find(|&v| v >= self.order) {
                return Err(Error::VertexOutOfRange { vertex: bad, order: self.order });
            }
        }
        let map: Vec<usize> = set.iter().collect();
        let mut position = vec![usize::MAX; self.order];
        for (i, &v) in map.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = position[w];
                if j != usize::MAX && j > i {
                    edges.push((i, j));
                }
            }
        }
        Ok((Graph::from_edges(map.len(), edges)?, map))
    }

    pub fn induced_by(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let set = VertexSet::from_iter_checked(self.order, vertices.iter().copied())?;
        self.induced_subgraph(&set)
    }

    /// Breadth-first distances from `src` (usize::MAX when unreachable),
    /// travelling only through vertices in `allowed`.
    pub fn bfs_distances(&self, src: usize, allowed: Option<&VertexSet>) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX && allowed.is_none_or(|a| a.contains(w)) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Two-colouring of the component of every vertex, or `None` if some
    /// component contains an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.order];
        for s in 0..self.order {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        stack.push(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        self.bfs_distances(0, None).iter().all(|&d| d != usize::MAX)
    }
}
