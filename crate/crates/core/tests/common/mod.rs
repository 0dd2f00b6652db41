//! Brute-force oracles and corpus generators shared by the integration tests.
//! Nothing here calls the search code under test.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand_xoshiro::SplitMix64;
use sizeramsey::graph::{Color, Coloring, Graph, TargetPattern};
use sizeramsey::rng;

pub fn rng(seed: u64) -> SplitMix64 {
    rng::seeded(seed)
}

pub fn random_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.gen::<f64>() < p).collect::<Vec<_>>();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph_with_edges(r: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = m.min(all.len());
    for i in 0..m {
        let j = r.gen_range(i..all.len());
        all.swap(i, j);
    }
    all.truncate(m);
    Graph::from_edges(n, all).unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<u64> {
    (0..g.order()).map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w)).collect()
}

/// Edge index of every pair, `usize::MAX` for non-edges.
pub fn edge_ids(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut ids = vec![vec![usize::MAX; n]; n];
    for (i, (u, v)) in g.edges().enumerate() {
        ids[u][v] = i;
        ids[v][u] = i;
    }
    ids
}

/// Every copy of `pattern` in `g` as a sorted edge-index set, found by
/// trying all injective vertex sequences.
pub fn naive_copies(g: &Graph, pattern: TargetPattern) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let ids = edge_ids(g);
    let mut out = BTreeSet::new();
    let k = pattern.order();
    if k > n {
        return out;
    }
    let mut seq = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn rec(n: usize, k: usize, seq: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
        if seq.len() == k {
            visit(seq);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                seq.push(v);
                rec(n, k, seq, used, visit);
                seq.pop();
                used[v] = false;
            }
        }
    }
    let mut visit = |s: &[usize]| {
        let pairs: Vec<(usize, usize)> = match pattern {
            TargetPattern::CycleExact { k } => (0..k).map(|i| (s[i], s[(i + 1) % k])).collect(),
            TargetPattern::PathOrder { k } => (1..k).map(|i| (s[i - 1], s[i])).collect(),
            TargetPattern::CompleteBipartite { a, .. } => {
                s[..a].iter().flat_map(|&x| s[a..].iter().map(move |&y| (x, y))).collect()
            }
        };
        let mut set = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            let e = ids[x][y];
            if e == usize::MAX {
                return;
            }
            set.push(e);
        }
        set.sort_unstable();
        set.dedup();
        out.insert(set);
    };
    rec(n, k, &mut seq, &mut used, &mut visit);
    out
}

pub fn connected_within(adj: &[u64], alive: u64) -> bool {
    if alive == 0 {
        return true;
    }
    let mut seen = 1u64 << alive.trailing_zeros();
    loop {
        let mut next = seen;
        for v in 0..adj.len() {
            if seen >> v & 1 == 1 {
                next |= adj[v] & alive;
            }
        }
        if next == seen {
            return seen == alive;
        }
        seen = next;
    }
}

/// Smallest vertex cut by subset enumeration; `n - 1` for complete graphs.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.order();
    let adj = adjacency(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = n.saturating_sub(1);
    for cut in 0u64..1 << n {
        let k = cut.count_ones() as usize;
        if k >= best || n - k < 2 {
            continue;
        }
        if !connected_within(&adj, full & !cut) {
            best = k;
        }
    }
    best
}

pub fn brute_independence(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.order();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// All Hamilton cycles (as vertex orders starting at 0) containing every
/// pair in `forced`.
pub fn brute_hamilton(g: &Graph, forced: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut found = Vec::new();
    if n < 3 {
        return found;
    }
    let adj = adjacency(g);
    let mut seq = vec![0usize];
    fn rec(
        adj: &[u64],
        n: usize,
        seq: &mut Vec<usize>,
        used: u64,
        forced: &[(usize, usize)],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *seq.last().unwrap();
        if seq.len() == n {
            if adj[last] & 1 == 1 {
                let on = |a: usize, b: usize| {
                    (0..n).any(|i| {
                        let (x, y) = (seq[i], seq[(i + 1) % n]);
                        (x, y) == (a, b) || (y, x) == (a, b)
                    })
                };
                if forced.iter().all(|&(a, b)| on(a, b)) {
                    out.push(seq.clone());
                }
            }
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 && adj[last] >> v & 1 == 1 {
                seq.push(v);
                rec(adj, n, seq, used | 1 << v, forced, out);
                seq.pop();
            }
        }
    }
    rec(&adj, n, &mut seq, 1, forced, &mut found);
    found
}

pub fn cycle_is_hamiltonian_through(g: &Graph, cycle: &[usize], forced: &[(usize, usize)]) -> bool {
    let n = g.order();
    if cycle.len() != n || cycle.iter().copied().collect::<HashSet<_>>().len() != n {
        return false;
    }
    let pairs: HashSet<(usize, usize)> =
        (0..n).map(|i| (cycle[i], cycle[(i + 1) % n])).map(|(a, b)| (a.min(b), a.max(b))).collect();
    pairs.iter().all(|&(a, b)| g.has_edge(a, b)) && forced.iter().all(|&(a, b)| pairs.contains(&(a.min(b), a.max(b))))
}

/// Arrowing by running through all `2^m` completions of `frozen`.
pub fn brute_arrows(g: &Graph, frozen: &Coloring, red: TargetPattern, blue: TargetPattern) -> bool {
    let to_mask = |c: &Vec<usize>| c.iter().fold(0u64, |m, &e| m | 1 << e);
    let red_copies: Vec<u64> = naive_copies(g, red).iter().map(to_mask).collect();
    let blue_copies: Vec<u64> = naive_copies(g, blue).iter().map(to_mask).collect();
    let mut base_red = 0u64;
    let mut free = Vec::new();
    for e in 0..g.edge_count() {
        match frozen.get(e) {
            Some(Color::Red) => base_red |= 1 << e,
            Some(Color::Blue) => {}
            None => free.push(e),
        }
    }
    let all = if g.edge_count() == 64 { u64::MAX } else { (1u64 << g.edge_count()) - 1 };
    (0u64..1 << free.len()).all(|bits| {
        let mut red_mask = base_red;
        for (i, &e) in free.iter().enumerate() {
            if bits >> i & 1 == 1 {
                red_mask |= 1 << e;
            }
        }
        let blue_mask = all & !red_mask;
        red_copies.iter().any(|&c| c & red_mask == c) || blue_copies.iter().any(|&c| c & blue_mask == c)
    })
}

pub fn random_pattern(r: &mut impl Rng) -> TargetPattern {
    match r.gen_range(0..3) {
        0 => TargetPattern::cycle(r.gen_range(3..=5)).unwrap(),
        1 => TargetPattern::path(r.gen_range(2..=5)).unwrap(),
        _ => {
            let (a, b) = [(1, 2), (1, 3), (2, 2)][r.gen_range(0..3)];
            TargetPattern::biclique(a, b).unwrap()
        }
    }
}

/// A random host on 4..=8 vertices with all but at most `max_free` edges
/// frozen at random.
pub fn random_instance(r: &mut impl Rng, max_free: usize) -> (Graph, Coloring, TargetPattern, TargetPattern) {
    let n = r.gen_range(4..=8);
    let p = r.gen_range(0.3..1.0);
    let g = random_graph(r, n, p);
    let mut c = Coloring::uncolored(&g);
    let free_target = r.gen_range(0..=max_free.min(g.edge_count()));
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    for i in 0..order.len() {
        let j = r.gen_range(i..order.len());
        order.swap(i, j);
    }
    for &e in order.iter().skip(free_target) {
        c.set(e, Some(if r.gen_bool(0.5) { Color::Red } else { Color::Blue }));
    }
    (g, c, random_pattern(r), random_pattern(r))
}

fn permute_code(adj: &[u64], perm: &[usize]) -> u64 {
    // Upper triangle of the relabelled adjacency matrix, row by row.
    let n = adj.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[perm[i]] >> perm[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Canonical code: the least adjacency code over orderings that list
/// vertices by ascending degree.
fn canonical(adj: &[u64]) -> u64 {
    let n = adj.len();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| adj[v].count_ones());
    let cells: Vec<Vec<usize>> =
        verts.chunk_by(|&a, &b| adj[a].count_ones() == adj[b].count_ones()).map(<[usize]>::to_vec).collect();
    let bounds: Vec<usize> = cells
        .iter()
        .scan(0, |acc, c| {
            *acc += c.len();
            Some(*acc)
        })
        .collect();
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    fn rec(cells: &[Vec<usize>], bounds: &[usize], perm: &mut Vec<usize>, adj: &[u64], best: &mut u64) {
        if perm.len() == adj.len() {
            *best = (*best).min(permute_code(adj, perm));
            return;
        }
        let cell = bounds.iter().position(|&b| b > perm.len()).unwrap();
        for &v in &cells[cell] {
            if !perm.contains(&v) {
                perm.push(v);
                rec(cells, bounds, perm, adj, best);
                perm.pop();
            }
        }
    }
    rec(&cells, &bounds, &mut perm, adj, &mut best);
    best
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// grown vertex by vertex and deduplicated by canonical code.
pub fn all_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &layer {
            for nb in 0u64..1 << (k - 1) {
                let mut a = adj.clone();
                for (v, row) in a.iter_mut().enumerate() {
                    if nb >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                a.push(nb);
                if seen.insert(canonical(&a)) {
                    next.push(a);
                }
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .map(|adj| {
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u] >> v & 1 == 1).collect();
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

/// Every vertex-disjoint path system with exactly `m` edges, `m <= 2`.
pub fn path_systems(g: &Graph, m: usize) -> Vec<Vec<Vec<usize>>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    match m {
        0 => vec![vec![]],
        1 => edges.iter().map(|&(u, v)| vec![vec![u, v]]).collect(),
        2 => {
            let mut out = Vec::new();
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    let (a, b) = edges[i];
                    let (c, d) = edges[j];
                    let shared: Vec<usize> = [a, b].into_iter().filter(|x| *x == c || *x == d).collect();
                    match shared.as_slice() {
                        [] => out.push(vec![vec![a, b], vec![c, d]]),
                        &[mid] => {
                            let x = if a == mid { b } else { a };
                            let y = if c == mid { d } else { c };
                            out.push(vec![vec![x, mid, y]]);
                        }
                        _ => unreachable!(),
                    }
                }
            }
            out
        }
        _ => panic!("only m <= 2 is enumerated"),
    }
}

/// Longest path order by DFS from every vertex.
pub fn longest_path_order(g: &Graph) -> usize {
    let adj = adjacency(g);
    fn rec(adj: &[u64], v: usize, used: u64) -> usize {
        let mut best = 1;
        for w in 0..adj.len() {
            if adj[v] >> w & 1 == 1 && used >> w & 1 == 0 {
                best = best.max(1 + rec(adj, w, used | 1 << w));
            }
        }
        best
    }
    (0..g.order()).map(|v| rec(&adj, v, 1 << v)).max().unwrap_or(0)
}
