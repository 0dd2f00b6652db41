//! Deciding `G → (H1, H2)` for small hosts.
//!
//! [`arrows_check`] searches over colourings of the uncoloured edges with
//! copy-list propagation; [`export_dimacs`] writes the same question as a CNF
//! formula whose models are exactly the good colourings.

mod cnf;
mod engine;
mod lazy;

use serde::{Deserialize, Serialize};

pub use cnf::{arrows_via_cnf, export_dimacs, CnfExport};

use crate::error::{Error, Result};
use crate::graph::search::enumerate_copies;
use crate::graph::{Color, Coloring, Graph, TargetPattern};
use crate::witnesses::{check_total, Verification};

/// Default cap on eagerly enumerated copies (both targets together).
pub const DEFAULT_COPY_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowingInstance {
    pub graph: Graph,
    pub red: TargetPattern,
    pub blue: TargetPattern,
    pub frozen: Coloring,
}

impl ArrowingInstance {
    pub fn new(graph: Graph, red: TargetPattern, blue: TargetPattern) -> Result<Self> {
        let frozen = Coloring::uncolored(&graph);
        Self::with_frozen(graph, red, blue, frozen)
    }

    pub fn with_frozen(graph: Graph, red: TargetPattern, blue: TargetPattern, frozen: Coloring) -> Result<Self> {
        frozen.check_domain(&graph)?;
        Ok(Self { graph, red: red.validated()?, blue: blue.validated()?, frozen })
    }

    /// The same question with the colours exchanged.
    pub fn swapped(&self) -> Self {
        Self { graph: self.graph.clone(), red: self.blue, blue: self.red, frozen: self.frozen.swapped() }
    }

    pub fn uncolored_edges(&self) -> usize {
        self.frozen.uncolored_count()
    }

    fn copies(&self, pattern: TargetPattern, cap: usize) -> Result<Vec<Vec<u32>>> {
        enumerate_copies(&self.graph, pattern, cap)
    }
}

/// Limits for [`arrows_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest number of uncoloured edges accepted.
    pub max_uncolored: usize,
    /// Search nodes after which the run gives up.
    pub max_nodes: Option<u64>,
    pub copy_cap: usize,
    /// Branching depth at which the tree is cut into independent subproblems.
    pub split_depth: u32,
    pub parallel: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_uncolored: 64, max_nodes: None, copy_cap: DEFAULT_COPY_CAP, split_depth: 4, parallel: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub copies: u64,
    pub subproblems: u64,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.propagations += other.propagations;
        self.conflicts += other.conflicts;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Propagation search over enumerated copies.
    Search,
    /// Copy lists too large: targets are searched for directly at each node.
    Lazy,
    Cnf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Arrows,
    GoodColoring(Coloring),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowingResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
    pub method: Method,
}

impl ArrowingResult {
    pub fn arrows(&self) -> bool {
        matches!(self.verdict, Verdict::Arrows)
    }

    pub fn good_coloring(&self) -> Option<&Coloring> {
        match &self.verdict {
            Verdict::GoodColoring(c) => Some(c),
            Verdict::Arrows => None,
        }
    }
}

/// Decides whether every total extension of the frozen colouring contains a
/// red copy of `inst.red` or a blue copy of `inst.blue`.
///
/// A good colouring, when one exists, is checked with [`verify_coloring`]
/// before it is returned. With `budget.parallel` the answer and statistics do
/// not depend on the number of worker threads.
pub fn arrows_check(inst: &ArrowingInstance, budget: &Budget) -> Result<ArrowingResult> {
    let free = inst.uncolored_edges();
    if free > budget.max_uncolored {
        return Err(Error::CapExceeded { what: "uncolored edges", cap: budget.max_uncolored, got: free });
    }
    let copies = inst
        .copies(inst.red, budget.copy_cap)
        .and_then(|red| inst.copies(inst.blue, budget.copy_cap.saturating_sub(red.len()).max(1)).map(|b| (red, b)));
    let result = match copies {
        Ok((red, blue)) => search(inst, &red, &blue, budget)?,
        Err(Error::EnumerationOverflow { .. }) => lazy::search(inst, budget)?,
        Err(e) => return Err(e),
    };
    if let Verdict::GoodColoring(c) = &result.verdict {
        if !verify_coloring(inst, c)?.is_good() {
            return Err(Error::Invariant("search returned a colouring with a monochromatic target".into()));
        }
    }
    Ok(result)
}

fn search(inst: &ArrowingInstance, red: &[Vec<u32>], blue: &[Vec<u32>], budget: &Budget) -> Result<ArrowingResult> {
    let m = inst.graph.edge_count();
    let idx = engine::CopyIndex::new(m, red, blue);
    let mut root = engine::State::new(&idx, m);
    let arrows = |stats| Ok(ArrowingResult { verdict: Verdict::Arrows, stats, method: Method::Search });
    if root.has_empty_copy() {
        return arrows(root.stats);
    }
    for (e, c) in inst.frozen.states().iter().enumerate() {
        if let Some(c) = *c {
            if !root.assign(e, c) {
                return arrows(root.stats);
            }
        }
    }
    let out = engine::solve(&root, budget.split_depth, budget.max_nodes, budget.parallel);
    let verdict = match out.outcome {
        engine::Outcome::Found(colors) => {
            Verdict::GoodColoring(Coloring::from_states(colors.into_iter().map(Some).collect()))
        }
        engine::Outcome::Closed => Verdict::Arrows,
        engine::Outcome::Exhausted => return Err(Error::BudgetExhausted { nodes: out.stats.nodes }),
        engine::Outcome::Cancelled => return Err(Error::Invariant("search cancelled without a result".into())),
    };
    Ok(ArrowingResult { verdict, stats: out.stats, method: Method::Search })
}

/// Checks a total colouring of the instance: `Good`, or a monochromatic copy.
pub fn verify_coloring(inst: &ArrowingInstance, total: &Coloring) -> Result<Verification> {
    total.check_extends(&inst.graph, &inst.frozen)?;
    check_total(&inst.graph, total, inst.red, inst.blue)
}

/// Result of a Ramsey number computation over complete hosts.
#[derive(Clone, Debug)]
pub struct RamseyOutcome {
    pub value: usize,
    /// A good colouring of the complete graph on `value - 1` vertices.
    pub lower_witness: Option<Coloring>,
    pub stats: Vec<(usize, SearchStats)>,
}

/// Least `m <= m_max` with `K_m → (red, blue)`, with a good colouring of
/// `K_{m-1}` showing that `m - 1` does not suffice.
pub fn ramsey_number(red: TargetPattern, blue: TargetPattern, m_max: usize, budget: &Budget) -> Result<RamseyOutcome> {
    let mut previous = None;
    let mut stats = Vec::new();
    for m in 1..=m_max {
        let inst = ArrowingInstance::new(Graph::complete(m)?, red, blue)?;
        let result = arrows_check(&inst, budget)?;
        stats.push((m, result.stats.clone()));
        match result.verdict {
            Verdict::Arrows => return Ok(RamseyOutcome { value: m, lower_witness: previous, stats }),
            Verdict::GoodColoring(c) => previous = Some(c),
        }
    }
    Err(Error::NotFound { m_max })
}

/// Exhaustive reference: tries all `2^k` extensions of the frozen colouring.
/// Only for tests and cross-checks; `k` is capped at 24.
pub fn arrows_brute_force(inst: &ArrowingInstance) -> Result<bool> {
    let free: Vec<usize> = (0..inst.graph.edge_count()).filter(|&e| inst.frozen.get(e).is_none()).collect();
    if free.len() > 24 {
        return Err(Error::CapExceeded { what: "brute-force uncolored edges", cap: 24, got: free.len() });
    }
    let mut c = inst.frozen.clone();
    for mask in 0u32..1 << free.len() {
        for (i, &e) in free.iter().enumerate() {
            c.set(e, Some(if mask >> i & 1 == 1 { Color::Red } else { Color::Blue }));
        }
        if check_total(&inst.graph, &c, inst.red, inst.blue)?.is_good() {
            return Ok(false);
        }
    }
    Ok(true)
}
