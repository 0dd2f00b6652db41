//! Exact detectors for [`TargetPattern`] copies: existence with a witness,
//! and exhaustive enumeration of distinct copies as edge sets.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bitset::iter_bits;
use super::{Color, Coloring, Graph, TargetPattern};
use crate::error::{Error, Result};

/// A located copy of a pattern.
///
/// Cycles and paths list their vertices in traversal order; a biclique lists
/// its `a`-side followed by its `b`-side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: TargetPattern,
    pub vertices: Vec<usize>,
}

impl Embedding {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let v = &self.vertices;
        let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        match self.pattern {
            TargetPattern::CycleExact { k } => (0..k).map(|i| norm(v[i], v[(i + 1) % k])).collect(),
            TargetPattern::PathOrder { k } => (1..k).map(|i| norm(v[i - 1], v[i])).collect(),
            TargetPattern::CompleteBipartite { a, .. } => {
                let (left, right) = v.split_at(a);
                left.iter().flat_map(|&x| right.iter().map(move |&y| norm(x, y))).collect()
            }
        }
    }

    /// Checks that this really is a copy of its pattern in `g`, using only
    /// edges of the given colour when `restrict` is set.
    pub fn is_valid_in(&self, g: &Graph, restrict: Option<(&Coloring, Color)>) -> bool {
        if self.vertices.len() != self.pattern.order() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !self.vertices.iter().all(|&v| v < g.order() && seen.insert(v)) {
            return false;
        }
        self.edges().into_iter().all(|(u, v)| match g.edge_index(u, v) {
            None => false,
            Some(i) => restrict.is_none_or(|(c, color)| c.get(i) == Some(color)),
        })
    }
}

fn host_graph<'a>(g: &'a Graph, restrict: Option<(&Coloring, Color)>) -> Result<std::borrow::Cow<'a, Graph>> {
    Ok(match restrict {
        None => std::borrow::Cow::Borrowed(g),
        Some((c, color)) => {
            c.check_domain(g)?;
            std::borrow::Cow::Owned(c.color_graph(g, color))
        }
    })
}

/// Finds one copy of `pattern` in `g` (restricted to edges of one colour if
/// requested). Absence is exact: the search is exhaustive.
pub fn find_target(
    g: &Graph,
    pattern: TargetPattern,
    restrict: Option<(&Coloring, Color)>,
) -> Result<Option<Embedding>> {
    let pattern = pattern.validated()?;
    let host = host_graph(g, restrict)?;
    let vertices = match pattern {
        TargetPattern::CycleExact { k } => find_cycle(&host, k),
        TargetPattern::PathOrder { k } => find_path(&host, k),
        TargetPattern::CompleteBipartite { a, b } => find_biclique(&host, a, b),
    };
    Ok(vertices.map(|vertices| Embedding { pattern, vertices }))
}

/// Vertices sorted by ascending degree, ties by id.
fn low_degree_order(h: &Graph, min_degree: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.order()).filter(|&v| h.degree(v) >= min_degree).collect();
    order.sort_by_key(|&v| (h.degree(v), v));
    order
}

/// Iteratively strips vertices of degree below `min_degree`.
fn core_vertices(h: &Graph, min_degree: usize) -> Vec<u64> {
    let words = h.words();
    let mut alive = vec![0u64; words];
    for v in 0..h.order() {
        alive[v / 64] |= 1 << (v % 64);
    }
    loop {
        let mut changed = false;
        for v in 0..h.order() {
            if alive[v / 64] >> (v % 64) & 1 == 1 {
                let deg: usize = h.row(v).iter().zip(&alive).map(|(a, b)| (a & b).count_ones() as usize).sum();
                if deg < min_degree {
                    alive[v / 64] &= !(1 << (v % 64));
                    changed = true;
                }
            }
        }
        if !changed {
            return alive;
        }
    }
}

#[inline]
fn test(bits: &[u64], v: usize) -> bool {
    bits[v / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn set(bits: &mut [u64], v: usize) {
    bits[v / 64] |= 1 << (v % 64);
}

#[inline]
fn clear(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1 << (v % 64));
}

fn find_cycle(h: &Graph, k: usize) -> Option<Vec<usize>> {
    if k > h.order() {
        return None;
    }
    let mut allowed = core_vertices(h, 2);
    let order = low_degree_order(h, 2);
    let words = h.words();
    for &start in &order {
        if !test(&allowed, start) {
            continue;
        }
        let allowed_set = super::VertexSet::from_words(h.order(), allowed.clone());
        let dist = h.bfs_distances(start, Some(&allowed_set));
        let mut visited = vec![0u64; words];
        set(&mut visited, start);
        let mut path = vec![start];
        if cycle_dfs(h, k, &allowed, &dist, &mut visited, &mut path) {
            return Some(path);
        }
        clear(&mut allowed, start);
    }
    None
}

fn cycle_dfs(h: &Graph, k: usize, allowed: &[u64], dist: &[usize], visited: &mut [u64], path: &mut Vec<usize>) -> bool {
    let cur = *path.last().unwrap();
    let len = path.len();
    if len == k {
        return h.has_edge(cur, path[0]);
    }
    let row = h.row(cur);
    let candidates: Vec<u64> = row.iter().zip(allowed).zip(visited.iter()).map(|((r, a), v)| r & a & !v).collect();
    for w in iter_bits(&candidates) {
        // w sits at position len; k - len edges remain to close the cycle.
        if dist[w] > k - len {
            continue;
        }
        set(visited, w);
        path.push(w);
        if cycle_dfs(h, k, allowed, dist, visited, path) {
            return true;
        }
        path.pop();
        clear(visited, w);
    }
    false
}

fn find_path(h: &Graph, k: usize) -> Option<Vec<usize>> {
    if k > h.order() || h.order() == 0 {
        return None;
    }
    if k == 1 {
        return Some(vec![0]);
    }
    let words = h.words();
    for start in low_degree_order(h, 1) {
        let mut visited = vec![0u64; words];
        set(&mut visited, start);
        if reachable_count(h, start, &visited) + 1 < k {
            continue;
        }
        let mut path = vec![start];
        if path_dfs(h, k, &mut visited, &mut path) {
            return Some(path);
        }
    }
    None
}

/// Number of unvisited vertices reachable from `from` through unvisited vertices.
fn reachable_count(h: &Graph, from: usize, visited: &[u64]) -> usize {
    let words = h.words();
    let mut seen = vec![0u64; words];
    let mut frontier = vec![from];
    let mut count = 0;
    while let Some(u) = frontier.pop() {
        for (i, (&r, &v)) in h.row(u).iter().zip(visited).enumerate() {
            let mut fresh = r & !v & !seen[i];
            seen[i] |= fresh;
            while fresh != 0 {
                let b = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                count += 1;
                frontier.push(i * 64 + b);
            }
        }
    }
    count
}

fn path_dfs(h: &Graph, k: usize, visited: &mut [u64], path: &mut Vec<usize>) -> bool {
    let len = path.len();
    if len == k {
        return true;
    }
    let cur = path[len - 1];
    if reachable_count(h, cur, visited) < k - len {
        return false;
    }
    let candidates: Vec<u64> = h.row(cur).iter().zip(visited.iter()).map(|(r, v)| r & !v).collect();
    let mut next: Vec<usize> = iter_bits(&candidates).collect();
    next.sort_by_key(|&w| (h.degree(w), w));
    for w in next {
        set(visited, w);
        path.push(w);
        if path_dfs(h, k, visited, path) {
            return true;
        }
        path.pop();
        clear(visited, w);
    }
    false
}

fn find_biclique(h: &Graph, a: usize, b: usize) -> Option<Vec<usize>> {
    let (small, large) = if a <= b { (a, b) } else { (b, a) };
    if a + b > h.order() {
        return None;
    }
    let mut chosen = Vec::with_capacity(small);
    let common = vec![!0u64; h.words()];
    let candidates: Vec<usize> = low_degree_order(h, large);
    let mut candidates = candidates;
    candidates.sort_unstable();
    let found = biclique_dfs(h, small, large, &candidates, 0, &common, &mut chosen)?;
    let (side_small, side_large) = found;
    Some(if a <= b {
        side_small.into_iter().chain(side_large).collect()
    } else {
        side_large.into_iter().chain(side_small).collect()
    })
}

fn biclique_dfs(
    h: &Graph,
    small: usize,
    large: usize,
    candidates: &[usize],
    from: usize,
    common: &[u64],
    chosen: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if chosen.len() == small {
        let other: Vec<usize> = iter_bits(common).filter(|&v| v < h.order()).take(large).collect();
        return (other.len() == large).then(|| (chosen.clone(), other));
    }
    for (i, &v) in candidates.iter().enumerate().skip(from) {
        if candidates.len() - i < small - chosen.len() {
            break;
        }
        let next: Vec<u64> = common.iter().zip(h.row(v)).map(|(c, r)| c & r).collect();
        let size: usize = next.iter().map(|w| w.count_ones() as usize).sum();
        if size < large {
            continue;
        }
        chosen.push(v);
        if let Some(found) = biclique_dfs(h, small, large, candidates, i + 1, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Every distinct copy of `pattern` in `g`, each given as its sorted list of
/// canonical edge indices. Copies are identified by edge set, so rotations
/// and reflections of a cycle count once. The result is sorted.
///
/// Fails with [`Error::EnumerationOverflow`] as soon as more than `cap`
/// copies have been seen.
pub fn enumerate_copies(g: &Graph, pattern: TargetPattern, cap: usize) -> Result<Vec<Vec<u32>>> {
    let pattern = pattern.validated()?;
    if cap == 0 {
        return Err(Error::Precondition("enumeration cap must be positive".into()));
    }
    if pattern.order() > g.order() {
        return Ok(Vec::new());
    }
    let per_start: Vec<Result<Vec<Vec<u32>>>> = (0..g.order())
        .into_par_iter()
        .map(|start| {
            let mut out = Vec::new();
            let mut sink = |verts: &[usize], kind: TargetPattern| -> Result<()> {
                out.push(edge_key(g, verts, kind));
                if out.len() > cap {
                    Err(Error::EnumerationOverflow { cap })
                } else {
                    Ok(())
                }
            };
            match pattern {
                TargetPattern::CycleExact { k } => enum_cycles_from(g, k, start, &mut sink)?,
                TargetPattern::PathOrder { k } => enum_paths_from(g, k, start, &mut sink)?,
                TargetPattern::CompleteBipartite { a, b } => enum_bicliques_from(g, a, b, start, &mut sink)?,
            }
            Ok(out)
        })
        .collect();
    let mut all = BTreeSet::new();
    for chunk in per_start {
        for key in chunk? {
            all.insert(key);
            if all.len() > cap {
                return Err(Error::EnumerationOverflow { cap });
            }
        }
    }
    Ok(all.into_iter().collect())
}

fn edge_key(g: &Graph, verts: &[usize], pattern: TargetPattern) -> Vec<u32> {
    let e = Embedding { pattern, vertices: verts.to_vec() };
    let mut key: Vec<u32> =
        e.edges().into_iter().map(|(u, v)| g.edge_index(u, v).expect("enumerated edge exists") as u32).collect();
    key.sort_unstable();
    key
}

type Sink<'a> = dyn FnMut(&[usize], TargetPattern) -> Result<()> + 'a;

/// Cycles whose smallest vertex is `start`, each reported once
/// (second vertex smaller than the last).
fn enum_cycles_from(g: &Graph, k: usize, start: usize, sink: &mut Sink<'_>) -> Result<()> {
    let words = g.words();
    let mut allowed = vec![0u64; words];
    for v in start..g.order() {
        set(&mut allowed, v);
    }
    let allowed_set = super::VertexSet::from_words(g.order(), allowed.clone());
    let dist = g.bfs_distances(start, Some(&allowed_set));
    let mut visited = vec![0u64; words];
    set(&mut visited, start);
    let mut path = vec![start];
    fn rec(
        g: &Graph,
        k: usize,
        allowed: &[u64],
        dist: &[usize],
        visited: &mut [u64],
        path: &mut Vec<usize>,
        sink: &mut Sink<'_>,
    ) -> Result<()> {
        let len = path.len();
        let cur = path[len - 1];
        if len == k {
            if g.has_edge(cur, path[0]) && path[1] < path[k - 1] {
                sink(path, TargetPattern::CycleExact { k })?;
            }
            return Ok(());
        }
        let cand: Vec<u64> = g.row(cur).iter().zip(allowed).zip(visited.iter()).map(|((r, a), v)| r & a & !v).collect();
        for w in iter_bits(&cand) {
            if dist[w] > k - len {
                continue;
            }
            set(visited, w);
            path.push(w);
            rec(g, k, allowed, dist, visited, path, sink)?;
            path.pop();
            clear(visited, w);
        }
        Ok(())
    }
    rec(g, k, &allowed, &dist, &mut visited, &mut path, sink)
}

/// Paths starting at `start` whose last vertex is larger than `start`.
fn enum_paths_from(g: &Graph, k: usize, start: usize, sink: &mut Sink<'_>) -> Result<()> {
    if k == 1 {
        if start == 0 {
            sink(&[start], TargetPattern::PathOrder { k })?;
        }
        return Ok(());
    }
    let mut visited = vec![0u64; g.words()];
    set(&mut visited, start);
    let mut path = vec![start];
    fn rec(g: &Graph, k: usize, visited: &mut [u64], path: &mut Vec<usize>, sink: &mut Sink<'_>) -> Result<()> {
        let len = path.len();
        if len == k {
            if path[0] < path[k - 1] {
                sink(path, TargetPattern::PathOrder { k })?;
            }
            return Ok(());
        }
        let cur = path[len - 1];
        let cand: Vec<u64> = g.row(cur).iter().zip(visited.iter()).map(|(r, v)| r & !v).collect();
        for w in iter_bits(&cand) {
            set(visited, w);
            path.push(w);
            rec(g, k, visited, path, sink)?;
            path.pop();
            clear(visited, w);
        }
        Ok(())
    }
    rec(g, k, &mut visited, &mut path, sink)
}

/// Bicliques whose `a`-side has smallest vertex `start`.
fn enum_bicliques_from(g: &Graph, a: usize, b: usize, start: usize, sink: &mut Sink<'_>) -> Result<()> {
    let pattern = TargetPattern::CompleteBipartite { a, b };
    let mut side = vec![start];
    let common: Vec<u64> = g.row(start).to_vec();
    fn rec(
        g: &Graph,
        a: usize,
        b: usize,
        pattern: TargetPattern,
        side: &mut Vec<usize>,
        common: &[u64],
        sink: &mut Sink<'_>,
    ) -> Result<()> {
        let size: usize = common.iter().map(|w| w.count_ones() as usize).sum();
        if size < b {
            return Ok(());
        }
        if side.len() == a {
            let pool: Vec<usize> = iter_bits(common).collect();
            let mut pick = Vec::with_capacity(b);
            return choose(&pool, b, 0, &mut pick, &mut |other: &[usize]| {
                let verts: Vec<usize> = side.iter().chain(other).copied().collect();
                sink(&verts, pattern)
            });
        }
        let last = *side.last().unwrap();
        for v in last + 1..g.order() {
            let next: Vec<u64> = common.iter().zip(g.row(v)).map(|(c, r)| c & r).collect();
            side.push(v);
            rec(g, a, b, pattern, side, &next, sink)?;
            side.pop();
        }
        Ok(())
    }
    rec(g, a, b, pattern, &mut side, &common, sink)
}

fn choose(
    pool: &[usize],
    k: usize,
    from: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if pick.len() == k {
        return f(pick);
    }
    for i in from..pool.len() {
        if pool.len() - i < k - pick.len() {
            break;
        }
        pick.push(pool[i]);
        choose(pool, k, i + 1, pick, f)?;
        pick.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(k: usize) -> TargetPattern {
        TargetPattern::CycleExact { k }
    }

    #[test]
    fn k4_has_a_four_cycle() {
        let g = Graph::complete(4).unwrap();
        let e = find_target(&g, cyc(4), None).unwrap().unwrap();
        assert!(e.is_valid_in(&g, None));
    }

    #[test]
    fn c5_has_no_triangle_but_a_hamilton_path() {
        let g = Graph::cycle(5).unwrap();
        assert!(find_target(&g, cyc(3), None).unwrap().is_none());
        let p = find_target(&g, TargetPattern::PathOrder { k: 5 }, None).unwrap().unwrap();
        assert!(p.is_valid_in(&g, None));
    }

    #[test]
    fn copy_counts() {
        let k4 = Graph::complete(4).unwrap();
        let k5 = Graph::complete(5).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(enumerate_copies(&k4, cyc(4), 100).unwrap().len(), 3);
        assert_eq!(enumerate_copies(&k5, cyc(4), 100).unwrap().len(), 15);
        assert_eq!(enumerate_copies(&c5, TargetPattern::PathOrder { k: 5 }, 100).unwrap().len(), 5);
        assert_eq!(enumerate_copies(&k4, TargetPattern::CompleteBipartite { a: 2, b: 2 }, 100).unwrap().len(), 3);
        assert_eq!(enumerate_copies(&k4, TargetPattern::CompleteBipartite { a: 1, b: 2 }, 100).unwrap().len(), 12);
    }

    #[test]
    fn enumeration_overflow() {
        let k5 = Graph::complete(5).unwrap();
        assert!(matches!(enumerate_copies(&k5, cyc(4), 14), Err(Error::EnumerationOverflow { cap: 14 })));
    }

    #[test]
    fn restricted_search_uses_one_colour() {
        let g = Graph::complete(4).unwrap();
        let mut c = Coloring::uniform(&g, Color::Blue);
        c.set_pair(&g, 0, 1, Some(Color::Red)).unwrap();
        assert!(find_target(&g, cyc(3), Some((&c, Color::Red))).unwrap().is_none());
        let t = find_target(&g, cyc(3), Some((&c, Color::Blue))).unwrap().unwrap();
        assert!(t.is_valid_in(&g, Some((&c, Color::Blue))));
        assert!(!t.is_valid_in(&g, Some((&c, Color::Red))));
    }

    #[test]
    fn biclique_sides() {
        let g = Graph::complete_bipartite(2, 3).unwrap();
        let e = find_target(&g, TargetPattern::CompleteBipartite { a: 3, b: 2 }, None).unwrap().unwrap();
        assert!(e.is_valid_in(&g, None));
        assert!(find_target(&g, TargetPattern::CompleteBipartite { a: 3, b: 3 }, None).unwrap().is_none());
    }
}
