use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameterised target subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetPattern {
    /// Cycle on exactly `k >= 3` vertices.
    CycleExact { k: usize },
    /// Path on exactly `k >= 1` vertices.
    PathOrder { k: usize },
    /// Complete bipartite graph with parts of sizes `a` and `b`.
    CompleteBipartite { a: usize, b: usize },
}

impl TargetPattern {
    pub fn cycle(k: usize) -> Result<Self> {
        TargetPattern::CycleExact { k }.validated()
    }

    pub fn path(k: usize) -> Result<Self> {
        TargetPattern::PathOrder { k }.validated()
    }

    pub fn biclique(a: usize, b: usize) -> Result<Self> {
        TargetPattern::CompleteBipartite { a, b }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            TargetPattern::CycleExact { k } => k >= 3,
            TargetPattern::PathOrder { k } => k >= 1,
            TargetPattern::CompleteBipartite { a, b } => a >= 1 && b >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidPattern(self.to_string()))
        }
    }

    /// Number of vertices in one copy.
    pub fn order(&self) -> usize {
        match *self {
            TargetPattern::CycleExact { k } | TargetPattern::PathOrder { k } => k,
            TargetPattern::CompleteBipartite { a, b } => a + b,
        }
    }

    /// Number of edges in one copy.
    pub fn size(&self) -> usize {
        match *self {
            TargetPattern::CycleExact { k } => k,
            TargetPattern::PathOrder { k } => k - 1,
            TargetPattern::CompleteBipartite { a, b } => a * b,
        }
    }
}

impl fmt::Display for TargetPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TargetPattern::CycleExact { k } => write!(f, "cycle:{k}"),
            TargetPattern::PathOrder { k } => write!(f, "path:{k}"),
            TargetPattern::CompleteBipartite { a, b } => write!(f, "biclique:{a}:{b}"),
        }
    }
}

/// Accepts `cycle:k`, `path:k` and `biclique:a:b` (also `biclique:a,b`).
impl FromStr for TargetPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPattern(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> =
            rest.split([':', ',']).map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?;
        let pattern = match (kind.trim().to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("cycle" | "c", [k]) => TargetPattern::CycleExact { k: *k },
            ("path" | "p", [k]) => TargetPattern::PathOrder { k: *k },
            ("biclique" | "k", [a, b]) => TargetPattern::CompleteBipartite { a: *a, b: *b },
            _ => return Err(bad()),
        };
        pattern.validated()
    }
}
