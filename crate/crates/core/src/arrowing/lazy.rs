//! Fallback search for instances whose copy lists exceed the cap: edges are
//! coloured in index order and each new colour class is checked directly.

use super::{ArrowingInstance, ArrowingResult, Budget, Method, SearchStats, Verdict};
use crate::error::{Error, Result};
use crate::graph::search::find_target;
use crate::graph::{Color, Coloring};

pub(super) fn search(inst: &ArrowingInstance, budget: &Budget) -> Result<ArrowingResult> {
    let mut stats = SearchStats::default();
    let mut coloring = inst.frozen.clone();
    for color in [Color::Red, Color::Blue] {
        if contains_target(inst, &coloring, color)? {
            return Ok(ArrowingResult { verdict: Verdict::Arrows, stats, method: Method::Lazy });
        }
    }
    let free: Vec<usize> = (0..inst.graph.edge_count()).filter(|&e| coloring.get(e).is_none()).collect();
    let found = dfs(inst, budget, &free, 0, &mut coloring, &mut stats)?;
    let verdict = if found { Verdict::GoodColoring(coloring) } else { Verdict::Arrows };
    Ok(ArrowingResult { verdict, stats, method: Method::Lazy })
}

fn contains_target(inst: &ArrowingInstance, coloring: &Coloring, color: Color) -> Result<bool> {
    let pattern = if color == Color::Red { inst.red } else { inst.blue };
    if pattern.order() > inst.graph.order() {
        return Ok(false);
    }
    Ok(find_target(&inst.graph, pattern, Some((coloring, color)))?.is_some())
}

fn dfs(
    inst: &ArrowingInstance,
    budget: &Budget,
    free: &[usize],
    depth: usize,
    coloring: &mut Coloring,
    stats: &mut SearchStats,
) -> Result<bool> {
    stats.nodes += 1;
    if budget.max_nodes.is_some_and(|l| stats.nodes > l) {
        return Err(Error::BudgetExhausted { nodes: stats.nodes });
    }
    let Some(&e) = free.get(depth) else {
        return Ok(true);
    };
    for color in [Color::Red, Color::Blue] {
        coloring.set(e, Some(color));
        if contains_target(inst, coloring, color)? {
            stats.conflicts += 1;
        } else if dfs(inst, budget, free, depth + 1, coloring, stats)? {
            return Ok(true);
        }
    }
    coloring.set(e, None);
    Ok(false)
}
