//! CNF encoding: variable `i` (1-based) is the `i`-th uncoloured edge in
//! canonical edge order and is true when that edge is red.

use super::{ArrowingInstance, ArrowingResult, Method, SearchStats, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Color, Coloring};
use crate::sat::{dpll, Cnf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfExport {
    pub cnf: Cnf,
    /// `var_edges[i]` is the edge index of variable `i + 1`.
    pub var_edges: Vec<usize>,
}

impl CnfExport {
    pub fn dimacs(&self) -> String {
        self.cnf.to_dimacs()
    }

    /// The total colouring described by a model of the formula.
    pub fn decode(&self, inst: &ArrowingInstance, model: &[bool]) -> Coloring {
        let mut c = inst.frozen.clone();
        for (&e, &red) in self.var_edges.iter().zip(model) {
            c.set(e, Some(if red { Color::Red } else { Color::Blue }));
        }
        c
    }
}

/// One clause per copy: a red-target copy needs a blue edge (negative
/// literals), a blue-target copy a red edge (positive literals). Copies that
/// already contain an edge frozen in the other colour are skipped; a copy
/// entirely frozen in its own colour yields the empty clause. Red copies come
/// first, each group in canonical copy order.
pub fn export_dimacs(inst: &ArrowingInstance, cap: usize) -> Result<CnfExport> {
    let mut var_of = vec![0i32; inst.graph.edge_count()];
    let mut var_edges = Vec::new();
    for (e, state) in inst.frozen.states().iter().enumerate() {
        if state.is_none() {
            var_edges.push(e);
            var_of[e] = var_edges.len() as i32;
        }
    }
    let mut clauses = Vec::new();
    for (pattern, color) in [(inst.red, Color::Red), (inst.blue, Color::Blue)] {
        let sign = if color == Color::Red { -1 } else { 1 };
        'copy: for copy in inst.copies(pattern, cap)? {
            let mut clause = Vec::new();
            for &e in &copy {
                match inst.frozen.get(e as usize) {
                    None => clause.push(sign * var_of[e as usize]),
                    Some(c) if c == color => {}
                    Some(_) => continue 'copy,
                }
            }
            clauses.push(clause);
        }
    }
    Ok(CnfExport { cnf: Cnf { vars: var_edges.len(), clauses }, var_edges })
}

/// Decides the instance through [`export_dimacs`] and the bundled DPLL.
pub fn arrows_via_cnf(inst: &ArrowingInstance, cap: usize) -> Result<ArrowingResult> {
    let export = export_dimacs(inst, cap)?;
    let stats = SearchStats { copies: export.cnf.clauses.len() as u64, ..SearchStats::default() };
    let verdict = match dpll(&export.cnf) {
        None => Verdict::Arrows,
        Some(model) => {
            let c = export.decode(inst, &model);
            if !super::verify_coloring(inst, &c)?.is_good() {
                return Err(Error::Invariant("CNF model is not a good colouring".into()));
            }
            Verdict::GoodColoring(c)
        }
    };
    Ok(ArrowingResult { verdict, stats, method: Method::Cnf })
}
