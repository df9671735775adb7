//! Maximal separated and minimal spanning cardinalities.
//!
//! Separation is strict (`d > ε`) and spanning is non-strict (`d ≤ ε`), so a
//! pair at distance exactly ε is neither separated nor outside each other's
//! reach. Both problems live on the same graph: a maximal separated set is a
//! maximum independent set and a minimal spanning set is a minimum
//! dominating set of [`separation_graph`].

mod bitset;
mod counting;
mod domset;
mod graph;
mod matrix;
mod mis;

use serde::{Deserialize, Serialize};

pub use bitset::BitSet;
pub use counting::{
    count_candidates, solve, Bounds, CandidateGraph, SeparationResult, SolverConfig, SolverStats,
    Want, TIE_WARNING,
};
pub use domset::{
    coverage_bound, domination_lower_bound, exact_dominating_set, greedy_dominating_set,
    packing_bound, DomOutcome,
};
pub use graph::SeparationGraph;
pub use matrix::OrbitDistanceMatrix;
pub use mis::{clique_cover_bound, exact_independent_set, greedy_independent_set, MisOutcome};

use crate::eps::Dyadic;

/// `{i, j}` is an edge iff `M[i][j] ≤ ε`.
pub fn separation_graph(d: &OrbitDistanceMatrix, eps: Dyadic) -> SeparationGraph {
    let g = CandidateGraph::from_matrix(d, eps);
    SeparationGraph::from_edges(d.len(), g.edges)
}

pub fn max_separated(d: &OrbitDistanceMatrix, eps: Dyadic, cfg: &SolverConfig) -> SeparationResult {
    solve(
        &CandidateGraph::from_matrix(d, eps),
        d.window(),
        eps,
        Want::Separated,
        cfg,
    )
}

pub fn min_spanning(d: &OrbitDistanceMatrix, eps: Dyadic, cfg: &SolverConfig) -> SeparationResult {
    solve(
        &CandidateGraph::from_matrix(d, eps),
        d.window(),
        eps,
        Want::Spanning,
        cfg,
    )
}

/// Both counts at one scale.
pub fn separation_result(
    d: &OrbitDistanceMatrix,
    eps: Dyadic,
    cfg: &SolverConfig,
) -> SeparationResult {
    solve(
        &CandidateGraph::from_matrix(d, eps),
        d.window(),
        eps,
        Want::Both,
        cfg,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SandwichStatus {
    Holds,
    Violated,
    Inconclusive,
}

/// `s(n, ε) ≤ r(n, ε) ≤ s(n, ε/2)` on exact values.
pub fn sandwich_check(at_eps: &SeparationResult, at_half: &SeparationResult) -> SandwichStatus {
    if at_eps.n != at_half.n || at_half.eps != at_eps.eps.half() {
        return SandwichStatus::Inconclusive;
    }
    match (at_eps.s_exact(), at_eps.r_exact(), at_half.s_exact()) {
        (Some(s), Some(r), Some(s_half)) if s <= r && r <= s_half => SandwichStatus::Holds,
        (Some(_), Some(_), Some(_)) => SandwichStatus::Violated,
        _ => SandwichStatus::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn three_point_graph_has_one_edge() {
        let d = OrbitDistanceMatrix::from_entries(
            1,
            vec![
                vec![0.0, 0.3, 0.6],
                vec![0.3, 0.0, 0.9],
                vec![0.6, 0.9, 0.0],
            ],
        )
        .unwrap();
        let g = separation_graph(&d, eps("1/2"));
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn ties_are_not_separated_but_are_covered() {
        let d = OrbitDistanceMatrix::from_entries(1, vec![vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        let res = separation_result(&d, eps("1/2"), &SolverConfig::default());
        assert_eq!(res.r_exact(), Some(1));
        assert_eq!(res.s_exact(), Some(1));
    }

    #[test]
    fn extremes() {
        let cfg = SolverConfig::default();
        let far = OrbitDistanceMatrix::from_entries(
            1,
            (0..4)
                .map(|i| (0..4).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
                .collect(),
        )
        .unwrap();
        let res = separation_result(&far, eps("1/4"), &cfg);
        assert_eq!((res.r_exact(), res.s_exact()), (Some(4), Some(4)));
        let res = separation_result(&far, eps("1"), &cfg);
        assert_eq!((res.r_exact(), res.s_exact()), (Some(1), Some(1)));
        let empty = OrbitDistanceMatrix::from_entries(1, vec![]).unwrap();
        let res = separation_result(&empty, eps("1/2"), &cfg);
        assert_eq!((res.r_exact(), res.s_exact()), (Some(0), Some(0)));
    }

    #[test]
    fn sandwich_singleton() {
        let d = OrbitDistanceMatrix::from_entries(3, vec![vec![0.0]]).unwrap();
        let cfg = SolverConfig::default();
        let a = separation_result(&d, eps("1/2"), &cfg);
        let b = separation_result(&d, eps("1/4"), &cfg);
        assert_eq!(sandwich_check(&a, &b), SandwichStatus::Holds);
        assert_eq!(sandwich_check(&b, &a), SandwichStatus::Inconclusive);
    }
}
