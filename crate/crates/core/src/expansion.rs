//! Density, regularity and expansion checks for a pair of disjoint vertex
//! sets, exhaustive at small sizes.
//!
//! All verdicts reduce to integer comparisons against thresholds computed once
//! in the scalar type `T`; with an exact `T` they are exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng;
use crate::scalar::Scalar;

pub const REGULARITY_CAP: usize = 16;
pub const GOOD_PAIR_CAP: usize = 20;

#[derive(Clone, Debug)]
pub struct PairContext<T> {
    pub graph: Graph,
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub p: T,
}

impl<T: Scalar> PairContext<T> {
    pub fn new(graph: Graph, v1: &[usize], v2: &[usize], p: T) -> Result<Self> {
        let n = graph.order();
        let v1 = VertexSet::from_iter_checked(n, v1.iter().copied())?;
        let v2 = VertexSet::from_iter_checked(n, v2.iter().copied())?;
        if !v1.is_disjoint(&v2) {
            return Err(Error::Precondition("the two sides must be disjoint".into()));
        }
        if !(p > T::zero() && p <= T::one()) {
            return Err(Error::Precondition(format!("p must lie in (0, 1], got {p}")));
        }
        Ok(PairContext { graph, v1, v2, p })
    }

    /// `e(A, B)` for subsets of the two sides.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| b.count_in(self.graph.row(v))).sum()
    }

    /// Degrees of each `v2` vertex into `v1`, in ascending `v2` order, as
    /// bit masks over positions of `v1`.
    fn cross_masks(&self) -> (Vec<usize>, Vec<usize>, Vec<u32>, Vec<u32>) {
        let a = self.v1.to_vec();
        let b = self.v2.to_vec();
        let mask_into = |from: &[usize], to: &[usize]| -> Vec<u32> {
            from.iter()
                .map(|&v| {
                    to.iter().enumerate().filter(|&(_, &w)| self.graph.has_edge(v, w)).fold(0, |m, (i, _)| m | 1 << i)
                })
                .collect()
        };
        let ab = mask_into(&a, &b);
        let ba = mask_into(&b, &a);
        (a, b, ab, ba)
    }
}

/// `e(V1, V2) / (p |V1| |V2|)`.
pub fn scaled_density<T: Scalar>(ctx: &PairContext<T>) -> Result<T> {
    if ctx.v1.is_empty() || ctx.v2.is_empty() {
        return Err(Error::Precondition("scaled density needs two non-empty sides".into()));
    }
    let e = ctx.edges_between(&ctx.v1, &ctx.v2) as u64;
    let size = (ctx.v1.len() * ctx.v2.len()) as u64;
    Ok(T::from_count(e) / (ctx.p.clone() * T::from_count(size)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    /// Random subset pairs; can only ever report a violation.
    Sampled {
        trials: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RegularityVerdict {
    Regular,
    /// Largest deviation found, with the subsets that realise it.
    Violated {
        u1: Vec<usize>,
        u2: Vec<usize>,
        deviation: f64,
    },
    /// Sampled mode found nothing; this is not a proof of regularity.
    NoViolationFound {
        trials: usize,
    },
}

/// Checks `|d_p(V1,V2) - d_p(U1,U2)| <= eps` for all `U_i ⊆ V_i` with
/// `|U_i| >= eps |V_i|` (and `U_i` non-empty).
///
/// Exact mode enumerates every `U1`; for a fixed `U1` and size of `U2` the
/// extreme edge counts come from the `V2` vertices of least and greatest
/// degree into `U1`, so checking those two choices per size decides all
/// `U2` at once.
pub fn is_regular_pair<T: Scalar>(ctx: &PairContext<T>, eps: &T, mode: CheckMode) -> Result<RegularityVerdict> {
    if !(*eps > T::zero()) {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    let (a, b, _, ba) = ctx.cross_masks();
    let (na, nb) = (a.len(), b.len());
    if na == 0 || nb == 0 {
        return Err(Error::Precondition("regularity needs two non-empty sides".into()));
    }
    let kmin = |n: usize| ((eps.clone() * T::from_count(n as u64)).ceil_int().max(1)) as usize;
    let (k1min, k2min) = (kmin(na), kmin(nb));
    let total = ctx.edges_between(&ctx.v1, &ctx.v2) as i128;
    let vv = (na * nb) as i128;
    // Violation iff |e * vv - total * k1 k2| > eps p k1 k2 vv, an integer test
    // against the floor of the right-hand side.
    let mut limit = vec![vec![0i128; nb + 1]; na + 1];
    for (k1, row) in limit.iter_mut().enumerate().skip(1) {
        for (k2, cell) in row.iter_mut().enumerate().skip(1) {
            let rhs = eps.clone() * ctx.p.clone() * T::from_count((k1 * k2) as u64) * T::from_count(vv as u64);
            *cell = rhs.floor_int() as i128;
        }
    }
    let mut worst: Option<(i128, i128, u32, Vec<usize>)> = None;
    let consider = |u1: u32,
                    k1: usize,
                    e: i128,
                    k2: usize,
                    pick: &dyn Fn() -> Vec<usize>,
                    worst: &mut Option<(i128, i128, u32, Vec<usize>)>| {
        let k = (k1 * k2) as i128;
        let dev = (e * vv - total * k).abs();
        if dev > limit[k1][k2] {
            // Compare dev / k across candidates without division.
            let better = worst.as_ref().is_none_or(|(wd, wk, _, _)| dev * wk > wd * k);
            if better {
                *worst = Some((dev, k, u1, pick()));
            }
        }
    };
    let mut trials_run = 0;
    match mode {
        CheckMode::Exact => {
            if na > REGULARITY_CAP || nb > REGULARITY_CAP {
                return Err(Error::CapExceeded { what: "exact regularity side", cap: REGULARITY_CAP, got: na.max(nb) });
            }
            let mut degs: Vec<(u32, usize)> = vec![(0, 0); nb];
            for u1 in 1u32..1 << na {
                let k1 = u1.count_ones() as usize;
                if k1 < k1min {
                    continue;
                }
                for (j, slot) in degs.iter_mut().enumerate() {
                    *slot = ((ba[j] & u1).count_ones(), j);
                }
                degs.sort_unstable();
                let mut low = 0i128;
                let mut high = 0i128;
                for k2 in 1..=nb {
                    low += degs[k2 - 1].0 as i128;
                    high += degs[nb - k2].0 as i128;
                    if k2 < k2min {
                        continue;
                    }
                    let lo_pick = || degs[..k2].iter().map(|&(_, j)| b[j]).collect();
                    let hi_pick = || degs[nb - k2..].iter().map(|&(_, j)| b[j]).collect();
                    consider(u1, k1, low, k2, &lo_pick, &mut worst);
                    consider(u1, k1, high, k2, &hi_pick, &mut worst);
                }
            }
        }
        CheckMode::Sampled { trials, seed } => {
            let mut r = rng::seeded(seed);
            let mut draw = |n: usize, kmin: usize| -> Vec<usize> {
                let k = kmin + (rng::unit_f64(&mut r) * (n - kmin + 1) as f64) as usize;
                let mut idx = rand::seq::index::sample(&mut r, n, k.min(n)).into_vec();
                idx.sort_unstable();
                idx
            };
            for _ in 0..trials {
                let i1 = draw(na, k1min);
                let i2 = draw(nb, k2min);
                let u1 = i1.iter().fold(0u32, |m, &i| m | 1 << i);
                let e: i128 = i2.iter().map(|&j| (ba[j] & u1).count_ones() as i128).sum();
                let pick = || i2.iter().map(|&j| b[j]).collect();
                consider(u1, i1.len(), e, i2.len(), &pick, &mut worst);
                trials_run += 1;
            }
        }
    }
    Ok(match worst {
        Some((dev, k, u1, u2)) => {
            let u1: Vec<usize> = (0..na).filter(|&i| u1 >> i & 1 == 1).map(|i| a[i]).collect();
            let deviation = dev as f64 / (k as f64 * vv as f64 * ctx.p.to_f64_lossy());
            RegularityVerdict::Violated { u1, u2, deviation }
        }
        None if matches!(mode, CheckMode::Exact) => RegularityVerdict::Regular,
        None => RegularityVerdict::NoViolationFound { trials: trials_run },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GoodPairVerdict {
    Good,
    /// `w ⊆ V_side` (side 1 or 2) whose neighbourhood is too small.
    Violated {
        side: u8,
        w: Vec<usize>,
        neighbourhood: usize,
        required: usize,
    },
}

/// Checks `|N(W)| >= min{9|W|, (1 - 2 eps)|V_{3-i}|}` for every non-empty
/// `W ⊆ V_i`, both sides, neighbourhoods taken inside the opposite side.
/// The first violation in subset order (side 1 first) is reported.
pub fn is_good_pair<T: Scalar>(ctx: &PairContext<T>, eps: &T) -> Result<GoodPairVerdict> {
    let (a, b, ab, ba) = ctx.cross_masks();
    if a.len() > GOOD_PAIR_CAP || b.len() > GOOD_PAIR_CAP {
        return Err(Error::CapExceeded { what: "good-pair side", cap: GOOD_PAIR_CAP, got: a.len().max(b.len()) });
    }
    let one_minus = T::one() - T::from_count(2) * eps.clone();
    for (side, own, masks, other_len) in [(1u8, &a, &ab, b.len()), (2u8, &b, &ba, a.len())] {
        let n = own.len();
        let cap = one_minus.clone() * T::from_count(other_len as u64);
        let required: Vec<usize> = (0..=n)
            .map(|k| {
                let nine = T::from_count(9 * k as u64);
                T::min_of(nine, cap.clone()).ceil_int().max(0) as usize
            })
            .collect();
        let mut nb = vec![0u32; 1 << n];
        for w in 1u32..1 << n {
            let low = w.trailing_zeros() as usize;
            nb[w as usize] = nb[(w & (w - 1)) as usize] | masks[low];
            let k = w.count_ones() as usize;
            let size = nb[w as usize].count_ones() as usize;
            if size < required[k] {
                let w_vertices = (0..n).filter(|&i| w >> i & 1 == 1).map(|i| own[i]).collect();
                return Ok(GoodPairVerdict::Violated {
                    side,
                    w: w_vertices,
                    neighbourhood: size,
                    required: required[k],
                });
            }
        }
    }
    Ok(GoodPairVerdict::Good)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandingTree {
    /// `levels[0]` is the root alone.
    pub levels: Vec<Vec<usize>>,
    /// `(child, parent)` for every non-root vertex.
    pub parent: Vec<(usize, usize)>,
}

/// Builds level by level a tree in which level `i` has exactly
/// `ceil(alpha |S_{i-1}|)` vertices, for `i = 1..=height`.
///
/// Each level takes the lowest-id vertices not yet in the tree that are
/// adjacent to the previous level; a vertex's parent is its lowest-id
/// neighbour there. With a pair context the root must lie in one side and
/// levels alternate sides. Returns `None` when some level cannot be filled.
pub fn expanding_tree<T: Scalar>(
    g: &Graph,
    root: usize,
    alpha: &T,
    height: usize,
    side: Option<&PairContext<T>>,
) -> Result<Option<ExpandingTree>> {
    if root >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: root, order: g.order() });
    }
    if *alpha < T::one() || height == 0 {
        return Err(Error::Precondition("need alpha >= 1 and height >= 1".into()));
    }
    let mut on_v1 = match side {
        None => true,
        Some(ctx) if ctx.v1.contains(root) => true,
        Some(ctx) if ctx.v2.contains(root) => false,
        Some(_) => return Err(Error::Precondition(format!("root {root} is in neither side"))),
    };
    let mut used = VertexSet::new(g.order());
    used.insert(root);
    let mut levels = vec![vec![root]];
    let mut parent = Vec::new();
    for _ in 0..height {
        let prev = levels.last().unwrap();
        let need = (alpha.clone() * T::from_count(prev.len() as u64)).ceil_int() as usize;
        let allowed = side.map(|ctx| if on_v1 { &ctx.v2 } else { &ctx.v1 });
        let mut level = Vec::with_capacity(need);
        for v in 0..g.order() {
            if level.len() == need {
                break;
            }
            if used.contains(v) || allowed.is_some_and(|s| !s.contains(v)) {
                continue;
            }
            if let Some(&p) = prev.iter().filter(|&&p| g.has_edge(p, v)).min() {
                level.push(v);
                parent.push((v, p));
            }
        }
        if level.len() < need {
            return Ok(None);
        }
        for &v in &level {
            used.insert(v);
        }
        levels.push(level);
        if side.is_some() {
            on_v1 = !on_v1;
        }
    }
    Ok(Some(ExpandingTree { levels, parent }))
}
