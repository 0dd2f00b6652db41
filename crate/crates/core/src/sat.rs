//! DIMACS CNF reading and writing, and a small DPLL solver used to cross-check
//! exported arrowing instances. Not meant for heavy instances.

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    /// Non-zero literals; variable `v` is `v` (true) or `-v` (false).
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    /// `p cnf V C`, then one clause per line terminated by ` 0`, LF endings.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Cnf> {
        let bad = |m: String| Error::Precondition(format!("malformed DIMACS: {m}"));
        let mut header = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                match fields.as_slice() {
                    ["cnf", v, c] if header.is_none() => {
                        let v: usize = v.parse().map_err(|_| bad(format!("variable count {v:?}")))?;
                        let c: usize = c.parse().map_err(|_| bad(format!("clause count {c:?}")))?;
                        header = Some((v, c));
                    }
                    _ => return Err(bad(format!("header {line:?}"))),
                }
                continue;
            }
            let (vars, _) = header.ok_or_else(|| bad("clause before header".into()))?;
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| bad(format!("literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(bad(format!("literal {lit} exceeds {vars} variables")));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| bad("missing header".into()))?;
        if !current.is_empty() {
            return Err(bad("last clause is not terminated".into()));
        }
        if clauses.len() != count {
            return Err(bad(format!("header announces {count} clauses, found {}", clauses.len())));
        }
        Ok(Cnf { vars, clauses })
    }
}

/// A satisfying assignment (`model[v - 1]` is the value of variable `v`),
/// or `None` if the formula is unsatisfiable.
pub fn dpll(cnf: &Cnf) -> Option<Vec<bool>> {
    let mut solver = Dpll {
        clauses: &cnf.clauses,
        value: vec![0i8; cnf.vars + 1],
        occurs: vec![Vec::new(); cnf.vars + 1],
        trail: Vec::new(),
    };
    for (i, c) in cnf.clauses.iter().enumerate() {
        if c.is_empty() {
            return None;
        }
        for &lit in c {
            solver.occurs[lit.unsigned_abs() as usize].push(i);
        }
    }
    let units: Vec<i32> = cnf.clauses.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    for lit in units {
        if !solver.assign_and_propagate(lit) {
            return None;
        }
    }
    solver.search().then(|| solver.value[1..].iter().map(|&v| v > 0).collect())
}

struct Dpll<'a> {
    clauses: &'a [Vec<i32>],
    /// +1 true, -1 false, 0 unassigned.
    value: Vec<i8>,
    occurs: Vec<Vec<usize>>,
    trail: Vec<usize>,
}

enum ClauseState {
    Satisfied,
    Unit(i32),
    Open,
    Falsified,
}

impl Dpll<'_> {
    fn lit_value(&self, lit: i32) -> i8 {
        let v = self.value[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            -v
        }
    }

    fn clause_state(&self, c: &[i32]) -> ClauseState {
        let mut free = None;
        let mut free_count = 0;
        for &lit in c {
            match self.lit_value(lit) {
                1 => return ClauseState::Satisfied,
                0 => {
                    free = Some(lit);
                    free_count += 1;
                }
                _ => {}
            }
        }
        match (free_count, free) {
            (0, _) => ClauseState::Falsified,
            (1, Some(lit)) => ClauseState::Unit(lit),
            _ => ClauseState::Open,
        }
    }

    fn assign_and_propagate(&mut self, lit: i32) -> bool {
        match self.lit_value(lit) {
            1 => return true,
            -1 => return false,
            _ => {}
        }
        let mut queue = vec![lit];
        while let Some(lit) = queue.pop() {
            match self.lit_value(lit) {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            let var = lit.unsigned_abs() as usize;
            self.value[var] = if lit > 0 { 1 } else { -1 };
            self.trail.push(var);
            for &ci in &self.occurs[var] {
                match self.clause_state(&self.clauses[ci]) {
                    ClauseState::Falsified => return false,
                    ClauseState::Unit(u) => queue.push(u),
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for var in self.trail.drain(mark..) {
            self.value[var] = 0;
        }
    }

    fn search(&mut self) -> bool {
        let Some(var) = (1..self.value.len()).find(|&v| self.value[v] == 0) else {
            return self.clauses.iter().all(|c| matches!(self.clause_state(c), ClauseState::Satisfied));
        };
        for lit in [var as i32, -(var as i32)] {
            let mark = self.trail.len();
            if self.assign_and_propagate(lit) && self.search() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn satisfies(cnf: &Cnf, model: &[bool]) -> bool {
        cnf.clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    fn brute(cnf: &Cnf) -> bool {
        (0u32..1 << cnf.vars).any(|m| {
            let model: Vec<bool> = (0..cnf.vars).map(|i| m >> i & 1 == 1).collect();
            satisfies(cnf, &model)
        })
    }

    #[test]
    fn round_trip_and_format() {
        let cnf = Cnf { vars: 3, clauses: vec![vec![1, -2], vec![], vec![3]] };
        let text = cnf.to_dimacs();
        assert_eq!(text, "p cnf 3 3\n1 -2 0\n0\n3 0\n");
        assert_eq!(Cnf::parse_dimacs(&text).unwrap(), cnf);
        assert!(Cnf::parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(Cnf::parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(Cnf::parse_dimacs("1 0\n").is_err());
    }

    #[test]
    fn small_formulas() {
        assert!(dpll(&Cnf { vars: 0, clauses: vec![] }).is_some());
        assert!(dpll(&Cnf { vars: 1, clauses: vec![vec![]] }).is_none());
        assert!(dpll(&Cnf { vars: 1, clauses: vec![vec![1], vec![-1]] }).is_none());
        let pigeon = Cnf {
            vars: 6,
            // Three pigeons, two holes: p_ij = 2(i) + j + 1.
            clauses: vec![
                vec![1, 2],
                vec![3, 4],
                vec![5, 6],
                vec![-1, -3],
                vec![-1, -5],
                vec![-3, -5],
                vec![-2, -4],
                vec![-2, -6],
                vec![-4, -6],
            ],
        };
        assert!(dpll(&pigeon).is_none());
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = crate::rng::seeded(11);
        for _ in 0..300 {
            let vars = 1 + (crate::rng::unit_f64(&mut rng) * 8.0) as usize;
            let count = (crate::rng::unit_f64(&mut rng) * 20.0) as usize;
            let clauses = (0..count)
                .map(|_| {
                    let len = 1 + (crate::rng::unit_f64(&mut rng) * 3.0) as usize;
                    (0..len)
                        .map(|_| {
                            let v = 1 + (crate::rng::unit_f64(&mut rng) * vars as f64) as i32;
                            if crate::rng::unit_f64(&mut rng) < 0.5 {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            let cnf = Cnf { vars, clauses };
            let model = dpll(&cnf);
            assert_eq!(model.is_some(), brute(&cnf));
            if let Some(m) = model {
                assert!(satisfies(&cnf, &m));
            }
        }
    }
}
