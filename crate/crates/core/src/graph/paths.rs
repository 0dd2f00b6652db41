use super::Graph;
use crate::error::{Error, Result};

/// A simple path with exactly `len` edges from `x` to `y`, if one exists.
///
/// Exhaustive DFS pruned by shortest-path distance to `y`; in bipartite
/// components the parity of `len` is checked up front.
pub fn exact_length_path(g: &Graph, x: usize, y: usize, len: usize) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
    }
    if x == y {
        return Err(Error::Precondition("endpoints must differ".into()));
    }
    if len == 0 || len >= n {
        return Err(Error::Precondition(format!("length must lie in 1..{n}, got {len}")));
    }
    let dist = g.bfs_distances(y, None);
    if dist[x] == usize::MAX || dist[x] > len {
        return Ok(None);
    }
    if let Some(side) = g.bipartition() {
        if (side[x] != side[y]) != (len % 2 == 1) {
            return Ok(None);
        }
    }
    let mut visited = vec![false; n];
    visited[x] = true;
    let mut path = vec![x];
    Ok(dfs(g, y, len, &dist, &mut visited, &mut path).then_some(path))
}

fn dfs(g: &Graph, target: usize, len: usize, dist: &[usize], visited: &mut [bool], path: &mut Vec<usize>) -> bool {
    let cur = *path.last().unwrap();
    let used = path.len() - 1;
    if cur == target {
        return used == len;
    }
    let remaining = len - used;
    for w in g.neighbors(cur) {
        if visited[w] || dist[w] == usize::MAX || dist[w] > remaining - 1 {
            continue;
        }
        // Reaching the target early would end the path too soon.
        if w == target && remaining != 1 {
            continue;
        }
        visited[w] = true;
        path.push(w);
        if dfs(g, target, len, dist, visited, path) {
            return true;
        }
        path.pop();
        visited[w] = false;
    }
    false
}
