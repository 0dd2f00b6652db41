//! Maximum independent sets by branch and bound on 64-bit adjacency masks.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by the exact solver.
pub const INDEPENDENCE_CAP: usize = 64;

pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// A maximum independent set, lexicographically first among those the
/// branching visits.
pub fn maximum_independent_set(g: &Graph) -> Result<Vec<usize>> {
    let masks = g.masks64().ok_or(Error::CapExceeded {
        what: "independence_number order",
        cap: INDEPENDENCE_CAP,
        got: g.order(),
    })?;
    let all = if g.order() == 64 { !0 } else { (1u64 << g.order()) - 1 };
    let best = max_independent_mask(&masks, all);
    Ok((0..g.order()).filter(|&v| best >> v & 1 == 1).collect())
}

/// Maximum independent subset of `candidates` in the graph given by `adj`.
pub(crate) fn max_independent_mask(adj: &[u64], candidates: u64) -> u64 {
    let mut best = 0u64;
    branch(adj, candidates, 0, &mut best);
    best
}

fn branch(adj: &[u64], cands: u64, chosen: u64, best: &mut u64) {
    if cands == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + colour_bound(adj, cands) <= best.count_ones() {
        return;
    }
    // Vertices with no neighbour among the candidates can always be taken.
    let mut isolated = 0u64;
    let mut pivot = usize::MAX;
    let mut pivot_deg = u32::MAX;
    let mut rest = cands;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & cands).count_ones();
        if d == 0 {
            isolated |= 1 << v;
        } else if d < pivot_deg {
            pivot_deg = d;
            pivot = v;
        }
    }
    if isolated != 0 {
        branch(adj, cands & !isolated, chosen | isolated, best);
        return;
    }
    // Some maximum set meets the closed neighbourhood of the pivot.
    let mut options = (adj[pivot] & cands) | (1 << pivot);
    let mut remaining = cands;
    while options != 0 {
        let u = options.trailing_zeros() as usize;
        options &= options - 1;
        branch(adj, remaining & !adj[u] & !(1 << u), chosen | (1 << u), best);
        remaining &= !(1 << u);
    }
}

/// Upper bound: a greedy clique cover of the candidates (colouring of the
/// complement) bounds any independent set by the number of cliques.
fn colour_bound(adj: &[u64], cands: u64) -> u32 {
    let mut uncovered = cands;
    let mut cliques = 0;
    while uncovered != 0 {
        let v = uncovered.trailing_zeros() as usize;
        let mut clique_cands = adj[v] & uncovered;
        uncovered &= !(1 << v);
        while clique_cands != 0 {
            let w = clique_cands.trailing_zeros() as usize;
            uncovered &= !(1 << w);
            clique_cands &= adj[w];
        }
        cliques += 1;
    }
    cliques
}
