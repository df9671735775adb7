//! Separated and spanning counts over large candidate sets.
//!
//! The separation graph of a preimage set is usually far from connected.
//! Candidates are grouped so that only pairs that can possibly fail
//! separation are compared; maximum independent sets and minimum dominating
//! sets then decompose over connected components.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::domset::{domination_lower_bound, exact_dominating_set, greedy_dominating_set};
use super::graph::SeparationGraph;
use super::matrix::OrbitDistanceMatrix;
use super::mis::{clique_cover_bound, exact_independent_set, greedy_independent_set};
use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::systems::{Point, SystemModel};

/// Distances this close to ε are reported as numerically fragile.
pub const TIE_WARNING: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Components up to this size are always solved exactly.
    pub exact_threshold: usize,
    /// Search-node limit shared by the larger components of one count.
    pub budget: u64,
    /// Counts needing more Bowen-distance comparisons than this fail with
    /// [`Error::TooDense`](crate::Error::TooDense).
    pub max_pairs: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact_threshold: 64,
            budget: 1_000_000,
            max_pairs: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
}

impl Bounds {
    pub fn exact(v: u64) -> Self {
        Bounds {
            lower: v,
            upper: v,
            exact: true,
        }
    }

    pub fn value(&self) -> Option<u64> {
        self.exact.then_some(self.lower)
    }

    fn add(self, other: Bounds) -> Bounds {
        Bounds {
            lower: self.lower + other.lower,
            upper: self.upper + other.upper,
            exact: self.exact && other.exact,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub candidates: usize,
    pub compared_pairs: u64,
    pub components: usize,
    pub largest_component: usize,
    pub nodes: u64,
    pub budget_exhausted: bool,
    /// Pairs with `|d - ε| < 2^-40` under a binary64 metric.
    pub near_ties: u64,
    #[serde(skip)]
    pub elapsed_us: u128,
}

/// Bounds on `r(n, ε, K, T)` and `s(n, ε, K, T)` for one candidate set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationResult {
    pub n: usize,
    pub eps: Dyadic,
    pub r: Option<Bounds>,
    pub s: Option<Bounds>,
    pub stats: SolverStats,
}

impl SeparationResult {
    pub fn r_exact(&self) -> Option<u64> {
        self.r.and_then(|b| b.value())
    }

    pub fn s_exact(&self) -> Option<u64> {
        self.s.and_then(|b| b.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Want {
    Separated,
    Spanning,
    Both,
}

impl Want {
    fn separated(self) -> bool {
        matches!(self, Want::Separated | Want::Both)
    }

    fn spanning(self) -> bool {
        matches!(self, Want::Spanning | Want::Both)
    }
}

/// Edges `{i, j}` with `d_{T,n} ≤ ε`, found without comparing every pair
/// when the system provides a separation key or a sweep coordinate.
#[derive(Debug, Clone, Default)]
pub struct CandidateGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub compared_pairs: u64,
    pub near_ties: u64,
}

impl CandidateGraph {
    pub fn from_matrix(d: &OrbitDistanceMatrix, eps: Dyadic) -> Self {
        let e = eps.value();
        let mut g = CandidateGraph {
            vertices: d.len(),
            ..Default::default()
        };
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                g.compared_pairs += 1;
                if d.get(i, j) <= e {
                    g.edges.push((i, j));
                }
            }
        }
        g
    }

    pub fn build(sys: &SystemModel, points: &[Point], n: usize, eps: Dyadic) -> Result<Self> {
        Self::build_within(sys, points, n, eps, u64::MAX)
    }

    /// As [`build`](Self::build), failing up front when more than
    /// `max_pairs` comparisons would be needed. Sweeps are not limited.
    pub fn build_within(
        sys: &SystemModel,
        points: &[Point],
        n: usize,
        eps: Dyadic,
        max_pairs: u64,
    ) -> Result<Self> {
        for p in points {
            sys.check(p)?;
        }
        let e = eps.value();
        let track_ties = sys.is_real_valued();
        let mut g = CandidateGraph {
            vertices: points.len(),
            ..Default::default()
        };
        let compare = |g: &mut CandidateGraph,
                       i: usize,
                       j: usize,
                       orbit_i: Option<&[Point]>,
                       orbit_j: Option<&[Point]>|
         -> Result<()> {
            let d = match (orbit_i, orbit_j) {
                (Some(a), Some(b)) => {
                    let mut best = 0.0f64;
                    for (x, y) in a.iter().zip(b) {
                        best = best.max(sys.distance_unchecked(x, y)?);
                    }
                    best
                }
                _ => sys.bowen_distance_unchecked(&points[i], &points[j], n)?,
            };
            g.compared_pairs += 1;
            if track_ties && (d - e).abs() < TIE_WARNING {
                g.near_ties += 1;
            }
            if d <= e {
                g.edges.push((i.min(j), i.max(j)));
            }
            Ok(())
        };

        let keys: Option<Vec<_>> = points
            .iter()
            .map(|p| sys.separation_key(p, n, eps))
            .collect();
        if let Some(keys) = keys {
            let mut groups: HashMap<&[u16], Vec<usize>> = HashMap::new();
            let mut order: Vec<&[u16]> = Vec::new();
            for (i, k) in keys.iter().enumerate() {
                groups
                    .entry(k.as_slice())
                    .or_insert_with(|| {
                        order.push(k.as_slice());
                        Vec::new()
                    })
                    .push(i);
            }
            let pairs: u64 = groups
                .values()
                .map(|m| (m.len() as u64) * (m.len() as u64 - 1) / 2)
                .sum();
            if pairs > max_pairs {
                return Err(Error::TooDense {
                    pairs,
                    limit: max_pairs,
                });
            }
            for k in order {
                let members = &groups[k];
                for (a, &i) in members.iter().enumerate() {
                    for &j in &members[a + 1..] {
                        compare(&mut g, i, j, None, None)?;
                    }
                }
            }
        } else {
            let len = points.len() as u64;
            let all_pairs = len * len.saturating_sub(1) / 2;
            if all_pairs > max_pairs && points.iter().all(|p| sys.sweep_coordinate(p).is_none()) {
                return Err(Error::TooDense {
                    pairs: all_pairs,
                    limit: max_pairs,
                });
            }
            let orbits: Vec<Vec<Point>> = points
                .iter()
                .map(|p| {
                    let mut orbit = Vec::with_capacity(n);
                    let mut y = p.clone();
                    orbit.push(y.clone());
                    for _ in 1..n {
                        y = sys.step_unchecked(&y)?;
                        orbit.push(y.clone());
                    }
                    Ok(orbit)
                })
                .collect::<Result<_>>()?;
            let coords: Option<Vec<f64>> = points.iter().map(|p| sys.sweep_coordinate(p)).collect();
            match coords {
                Some(coords) => {
                    let circle = sys.sweep_is_circle();
                    let mut idx: Vec<usize> = (0..points.len()).collect();
                    idx.sort_by(|&a, &b| coords[a].total_cmp(&coords[b]).then(a.cmp(&b)));
                    let len = idx.len();
                    for a in 0..len {
                        for step in 1..len {
                            let b = a + step;
                            let (b, gap) = if b < len {
                                (b, coords[idx[b]] - coords[idx[a]])
                            } else if circle {
                                let b = b - len;
                                if b >= a {
                                    break;
                                }
                                (b, coords[idx[b]] + 1.0 - coords[idx[a]])
                            } else {
                                break;
                            };
                            if gap > e {
                                break;
                            }
                            // wrapped pairs are visited from the later index only
                            let (i, j) = (idx[a], idx[b]);
                            compare(&mut g, i, j, Some(&orbits[i]), Some(&orbits[j]))?;
                        }
                    }
                    g.edges.sort_unstable();
                    g.edges.dedup();
                }
                None => {
                    for i in 0..points.len() {
                        for j in i + 1..points.len() {
                            compare(&mut g, i, j, Some(&orbits[i]), Some(&orbits[j]))?;
                        }
                    }
                }
            }
        }
        Ok(g)
    }
}

fn solve_component(
    g: &SeparationGraph,
    want: Want,
    cfg: &SolverConfig,
    remaining: &mut u64,
    stats: &mut SolverStats,
) -> (Option<Bounds>, Option<Bounds>) {
    let size = g.len();
    let complete = g.edge_count() == size * (size - 1) / 2;
    if complete {
        return (
            want.separated().then(|| Bounds::exact(1)),
            want.spanning().then(|| Bounds::exact(1)),
        );
    }
    let limited = size > cfg.exact_threshold;
    let r = want.separated().then(|| {
        let greedy = greedy_independent_set(g).len() as u64;
        let cover = clique_cover_bound(g) as u64;
        if greedy == cover {
            return Bounds::exact(greedy);
        }
        let out = exact_independent_set(g, limited.then_some(*remaining));
        stats.nodes += out.nodes;
        if limited {
            *remaining = remaining.saturating_sub(out.nodes);
        }
        if out.complete {
            Bounds::exact(out.best.len() as u64)
        } else {
            stats.budget_exhausted = true;
            Bounds {
                lower: (out.best.len() as u64).max(greedy),
                upper: cover,
                exact: false,
            }
        }
    });
    let s = want.spanning().then(|| {
        if limited {
            let greedy = greedy_dominating_set(g).len() as u64;
            let pack = domination_lower_bound(g) as u64;
            if greedy == pack {
                return Bounds::exact(greedy);
            }
        }
        let out = exact_dominating_set(g, limited.then_some(*remaining));
        stats.nodes += out.nodes;
        if limited {
            *remaining = remaining.saturating_sub(out.nodes);
        }
        if out.complete {
            Bounds::exact(out.best.len() as u64)
        } else {
            stats.budget_exhausted = true;
            Bounds {
                lower: out.lower as u64,
                upper: out.best.len() as u64,
                exact: false,
            }
        }
    });
    (r, s)
}

/// Size and sorted local edge list of one component.
type ComponentKey = (usize, Vec<(usize, usize)>);

/// Solves a candidate graph component by component.
pub fn solve(
    graph: &CandidateGraph,
    n: usize,
    eps: Dyadic,
    want: Want,
    cfg: &SolverConfig,
) -> SeparationResult {
    let start = Instant::now();
    let nv = graph.vertices;
    let mut stats = SolverStats {
        candidates: nv,
        compared_pairs: graph.compared_pairs,
        near_ties: graph.near_ties,
        ..Default::default()
    };

    // union-find over the edge list
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(i, j) in &graph.edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comp_of = vec![usize::MAX; nv];
    let mut local = vec![0usize; nv];
    let mut sizes: Vec<usize> = Vec::new();
    for v in 0..nv {
        let root = find(&mut parent, v);
        if comp_of[root] == usize::MAX {
            comp_of[root] = sizes.len();
            sizes.push(0);
        }
        let c = comp_of[root];
        comp_of[v] = c;
        local[v] = sizes[c];
        sizes[c] += 1;
    }
    let mut comp_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sizes.len()];
    for &(i, j) in &graph.edges {
        comp_edges[comp_of[i]].push((local[i], local[j]));
    }

    let mut r = want.separated().then(|| Bounds::exact(0));
    let mut s = want.spanning().then(|| Bounds::exact(0));
    stats.components = sizes.len();
    stats.largest_component = sizes.iter().copied().max().unwrap_or(0);
    let mut remaining = cfg.budget;
    // key buckets often repeat the same labelled component
    let mut solved: HashMap<ComponentKey, (Option<Bounds>, Option<Bounds>)> = HashMap::new();
    for (c, &size) in sizes.iter().enumerate() {
        let (cr, cs) = if size == 1 {
            (Some(Bounds::exact(1)), Some(Bounds::exact(1)))
        } else {
            let mut edges = std::mem::take(&mut comp_edges[c]);
            edges.sort_unstable();
            let key = (size, edges);
            match solved.get(&key) {
                Some(&hit) => hit,
                None => {
                    let g = SeparationGraph::from_edges(size, key.1.iter().copied());
                    let out = solve_component(&g, want, cfg, &mut remaining, &mut stats);
                    solved.insert(key, out);
                    out
                }
            }
        };
        r = r.zip(cr).map(|(a, b)| a.add(b));
        s = s.zip(cs).map(|(a, b)| a.add(b));
    }
    stats.elapsed_us = start.elapsed().as_micros();
    SeparationResult {
        n,
        eps,
        r,
        s,
        stats,
    }
}

/// Counts for a candidate set of `sys`, e.g. a preimage set.
pub fn count_candidates(
    sys: &SystemModel,
    points: &[Point],
    n: usize,
    eps: Dyadic,
    want: Want,
    cfg: &SolverConfig,
) -> Result<SeparationResult> {
    let graph = CandidateGraph::build_within(sys, points, n, eps, cfg.max_pairs)?;
    Ok(solve(&graph, n, eps, want, cfg))
}
