//! Vertex connectivity through unit-capacity max-flow on the split graph.

use super::Graph;
use crate::error::{Error, Result};

/// Unit-capacity flow network where vertex `v` becomes `v_in = 2v` and
/// `v_out = 2v + 1` joined by an arc of capacity one.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u8>,
    adj: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let mut net = SplitNetwork { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); 2 * g.order()] };
        for v in 0..g.order() {
            net.arc(2 * v, 2 * v + 1);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v);
            net.arc(2 * v + 1, 2 * u);
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(1);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Internally vertex-disjoint s-t paths, stopping once `limit` are found.
    fn local_connectivity(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        let mut prev = vec![usize::MAX; self.adj.len()];
        while flow < limit {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = std::collections::VecDeque::from([source]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                for &a in &self.adj[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && prev[y] == usize::MAX && y != source {
                        prev[y] = a;
                        if y == sink {
                            reached = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut y = sink;
            while y != source {
                let a = prev[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn reset(&mut self) {
        for (i, c) in self.cap.iter_mut().enumerate() {
            *c = u8::from(i % 2 == 0);
        }
    }
}

/// Exact vertex connectivity. A complete graph on `n` vertices has `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n < 2 {
        return Err(Error::Precondition("vertex connectivity needs at least two vertices".into()));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut best = g.min_degree().unwrap_or(0);
    let mut net = SplitNetwork::new(g);
    // Some minimum separator misses one of the first best+1 vertices, so
    // those sources suffice.
    let mut s = 0;
    while s <= best && s < n {
        for t in 0..n {
            if t == s || g.has_edge(s, t) {
                continue;
            }
            net.reset();
            let k = net.local_connectivity(s, t, best);
            best = best.min(k);
            if best == 0 {
                return Ok(0);
            }
        }
        s += 1;
    }
    Ok(best)
}
