//! Exhaustive colouring search over precomputed copy lists.
//!
//! Every copy of the red target is a set of edges that must not all turn red,
//! and every blue copy a set that must not all turn blue. Per copy we keep the
//! number of edges already in its own colour and the number already in the
//! other colour; a copy with one edge of the other colour can never complete.
//! A live copy missing a single edge forces that edge to the other colour,
//! and a live copy with no edge missing is a conflict.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::SearchStats;
use crate::graph::Color;

/// Read-only copy lists shared by all workers.
pub(crate) struct CopyIndex {
    offsets: Vec<u32>,
    members: Vec<u32>,
    color: Vec<Color>,
    by_edge: Vec<Vec<u32>>,
}

impl CopyIndex {
    pub(crate) fn new(edge_count: usize, red: &[Vec<u32>], blue: &[Vec<u32>]) -> Self {
        let mut offsets = vec![0u32];
        let mut members = Vec::new();
        let mut color = Vec::new();
        let mut by_edge = vec![Vec::new(); edge_count];
        for (list, c) in [(red, Color::Red), (blue, Color::Blue)] {
            for copy in list {
                let id = color.len() as u32;
                for &e in copy {
                    by_edge[e as usize].push(id);
                }
                members.extend_from_slice(copy);
                offsets.push(members.len() as u32);
                color.push(c);
            }
        }
        CopyIndex { offsets, members, color, by_edge }
    }

    pub(crate) fn len(&self) -> usize {
        self.color.len()
    }

    #[inline]
    fn edges(&self, c: usize) -> &[u32] {
        &self.members[self.offsets[c] as usize..self.offsets[c + 1] as usize]
    }

    #[inline]
    fn size(&self, c: usize) -> u32 {
        self.offsets[c + 1] - self.offsets[c]
    }
}

/// Score weight of a live copy that still misses `rem` edges.
#[inline]
fn weight(rem: u32) -> i64 {
    if rem == 0 || rem > 4 {
        0
    } else {
        1 << (3 * (4 - rem))
    }
}

pub(crate) enum Outcome {
    Found(Vec<Color>),
    Closed,
    /// Node limit reached.
    Exhausted,
    /// A lower-numbered subproblem already found a colouring.
    Cancelled,
}

#[derive(Clone)]
pub(crate) struct State<'a> {
    idx: &'a CopyIndex,
    assign: Vec<Option<Color>>,
    own: Vec<u32>,
    other: Vec<u32>,
    score: Vec<i64>,
    trail: Vec<u32>,
    queue: Vec<(u32, Color)>,
    pub(crate) stats: SearchStats,
}

impl<'a> State<'a> {
    pub(crate) fn new(idx: &'a CopyIndex, edge_count: usize) -> Self {
        let mut st = State {
            idx,
            assign: vec![None; edge_count],
            own: vec![0; idx.len()],
            other: vec![0; idx.len()],
            score: vec![0; edge_count],
            trail: Vec::new(),
            queue: Vec::new(),
            stats: SearchStats { copies: idx.len() as u64, ..SearchStats::default() },
        };
        for c in 0..idx.len() {
            let w = weight(idx.size(c));
            if w != 0 {
                for &e in idx.edges(c) {
                    st.score[e as usize] += w;
                }
            }
        }
        st
    }

    /// A copy with no edges is present in every colouring.
    pub(crate) fn has_empty_copy(&self) -> bool {
        (0..self.idx.len()).any(|c| self.idx.size(c) == 0)
    }

    pub(crate) fn mark(&self) -> usize {
        self.trail.len()
    }

    pub(crate) fn colors(&self) -> Vec<Color> {
        self.assign.iter().map(|c| c.expect("total assignment")).collect()
    }

    /// Colours `edge` and propagates; false on conflict. The caller undoes to
    /// its mark either way when backtracking.
    pub(crate) fn assign(&mut self, edge: usize, color: Color) -> bool {
        self.queue.clear();
        self.queue.push((edge as u32, color));
        let mut first = true;
        while let Some((e, col)) = self.queue.pop() {
            match self.assign[e as usize] {
                Some(c) if c == col => continue,
                Some(_) => return false,
                None => {}
            }
            if !first {
                self.stats.propagations += 1;
            }
            first = false;
            if !self.set(e as usize, col) {
                return false;
            }
        }
        true
    }

    fn set(&mut self, e: usize, col: Color) -> bool {
        let idx = self.idx;
        self.assign[e] = Some(col);
        self.trail.push(e as u32);
        let mut ok = true;
        for &c in &idx.by_edge[e] {
            let c = c as usize;
            let size = idx.size(c);
            if idx.color[c] == col {
                self.own[c] += 1;
                if self.other[c] != 0 {
                    continue;
                }
                let rem = size - self.own[c];
                let delta = weight(rem) - weight(rem + 1);
                if delta != 0 {
                    for &x in idx.edges(c) {
                        self.score[x as usize] += delta;
                    }
                }
                if rem == 0 {
                    ok = false;
                } else if rem == 1 && ok {
                    let last = idx.edges(c).iter().find(|&&x| self.assign[x as usize].is_none());
                    if let Some(&x) = last {
                        self.queue.push((x, col.other()));
                    }
                }
            } else {
                self.other[c] += 1;
                if self.other[c] == 1 {
                    let w = weight(size - self.own[c]);
                    if w != 0 {
                        for &x in idx.edges(c) {
                            self.score[x as usize] -= w;
                        }
                    }
                }
            }
        }
        ok
    }

    pub(crate) fn undo(&mut self, mark: usize) {
        let idx = self.idx;
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap() as usize;
            let col = self.assign[e].take().unwrap();
            for &c in &idx.by_edge[e] {
                let c = c as usize;
                let size = idx.size(c);
                if idx.color[c] == col {
                    if self.other[c] == 0 {
                        let rem = size - self.own[c];
                        let delta = weight(rem) - weight(rem + 1);
                        if delta != 0 {
                            for &x in idx.edges(c) {
                                self.score[x as usize] -= delta;
                            }
                        }
                    }
                    self.own[c] -= 1;
                } else {
                    if self.other[c] == 1 {
                        let w = weight(size - self.own[c]);
                        if w != 0 {
                            for &x in idx.edges(c) {
                                self.score[x as usize] += w;
                            }
                        }
                    }
                    self.other[c] -= 1;
                }
            }
        }
    }

    /// Uncoloured edge with the highest score (lowest index on ties) and the
    /// colour to try first: the one whose copies are further from complete.
    fn pick(&self) -> Option<(usize, [Color; 2])> {
        let mut best: Option<(usize, i64)> = None;
        for (e, a) in self.assign.iter().enumerate() {
            if a.is_none() && best.is_none_or(|(_, s)| self.score[e] > s) {
                best = Some((e, self.score[e]));
            }
        }
        let (e, _) = best?;
        let (mut red, mut blue) = (0i64, 0i64);
        for &c in &self.idx.by_edge[e] {
            let c = c as usize;
            if self.other[c] == 0 {
                let w = weight(self.idx.size(c) - self.own[c]);
                match self.idx.color[c] {
                    Color::Red => red += w,
                    Color::Blue => blue += w,
                }
            }
        }
        let order = if red > blue { [Color::Blue, Color::Red] } else { [Color::Red, Color::Blue] };
        Some((e, order))
    }

    fn dfs(&mut self, limit: Option<u64>, cancel: Option<(&AtomicUsize, usize)>) -> Outcome {
        self.stats.nodes += 1;
        if limit.is_some_and(|l| self.stats.nodes > l) {
            return Outcome::Exhausted;
        }
        if self.stats.nodes.is_multiple_of(1024) {
            if let Some((flag, me)) = cancel {
                if flag.load(Ordering::Relaxed) < me {
                    return Outcome::Cancelled;
                }
            }
        }
        let Some((e, order)) = self.pick() else {
            return Outcome::Found(self.colors());
        };
        for col in order {
            let mark = self.mark();
            if self.assign(e, col) {
                match self.dfs(limit, cancel) {
                    Outcome::Closed => {}
                    other => return other,
                }
            } else {
                self.stats.conflicts += 1;
            }
            self.undo(mark);
        }
        Outcome::Closed
    }

    /// Decision prefixes of the first `depth` branchings, in search order.
    /// Prefixes that end in a conflict are dropped (and counted); a prefix
    /// that reaches a total colouring is still returned and solved trivially.
    fn split(&mut self, depth: u32, prefix: &mut Vec<(usize, Color)>, out: &mut Vec<Vec<(usize, Color)>>) {
        if depth == 0 {
            out.push(prefix.clone());
            return;
        }
        self.stats.nodes += 1;
        let Some((e, order)) = self.pick() else {
            out.push(prefix.clone());
            return;
        };
        for col in order {
            let mark = self.mark();
            if self.assign(e, col) {
                prefix.push((e, col));
                self.split(depth - 1, prefix, out);
                prefix.pop();
            } else {
                self.stats.conflicts += 1;
            }
            self.undo(mark);
        }
    }
}

pub(crate) struct SearchOutcome {
    pub(crate) outcome: Outcome,
    pub(crate) stats: SearchStats,
}

/// Searches from `root` (frozen edges already assigned and propagated).
///
/// The tree is cut into subproblems at `split_depth`; subproblems are solved
/// independently, in parallel when `parallel` is set, and reported as if run
/// in order: the first subproblem holding a colouring wins, statistics cover
/// the subproblems up to and including the one that decided, and the node
/// limit applies to that running total. The answer and the statistics are
/// therefore the same for any thread count.
pub(crate) fn solve(root: &State<'_>, split_depth: u32, limit: Option<u64>, parallel: bool) -> SearchOutcome {
    let mut splitter = root.clone();
    let mut prefixes = Vec::new();
    splitter.split(split_depth, &mut Vec::new(), &mut prefixes);
    let mut stats = splitter.stats.clone();
    let found_at = AtomicUsize::new(usize::MAX);
    let run = |(i, prefix): (usize, &Vec<(usize, Color)>)| -> (Outcome, SearchStats) {
        let mut st = root.clone();
        st.stats = SearchStats::default();
        for &(e, c) in prefix {
            let ok = st.assign(e, c);
            debug_assert!(ok, "replayed prefix cannot conflict");
        }
        st.stats = SearchStats::default();
        let out = st.dfs(limit, Some((&found_at, i)));
        if matches!(out, Outcome::Found(_)) {
            found_at.fetch_min(i, Ordering::Relaxed);
        }
        (out, st.stats)
    };
    let results: Vec<(Outcome, SearchStats)> = if parallel {
        prefixes.par_iter().enumerate().map(run).collect()
    } else {
        let mut v = Vec::new();
        for item in prefixes.iter().enumerate() {
            let r = run(item);
            let stop = !matches!(r.0, Outcome::Closed);
            v.push(r);
            if stop {
                break;
            }
        }
        v
    };
    stats.subproblems = prefixes.len() as u64;
    for (outcome, sub) in results {
        stats.absorb(&sub);
        if limit.is_some_and(|l| stats.nodes > l) {
            return SearchOutcome { outcome: Outcome::Exhausted, stats };
        }
        match outcome {
            Outcome::Closed => {}
            Outcome::Cancelled => unreachable!("only subproblems after a success are cancelled"),
            decided => return SearchOutcome { outcome: decided, stats },
        }
    }
    SearchOutcome { outcome: Outcome::Closed, stats }
}
