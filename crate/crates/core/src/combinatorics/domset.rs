//! Minimum dominating sets with closed neighbourhoods, i.e. minimal
//! `(n, ε)`-spanning subsets (`y` covers `x` iff `d_{T,n}(x, y) ≤ ε`).

use super::bitset::BitSet;
use super::graph::SeparationGraph;

/// Greedy maximum-coverage choice (lowest index on ties), followed by a pass
/// dropping members whose neighbourhood is already covered by the rest.
pub fn greedy_dominating_set(g: &SeparationGraph) -> Vec<usize> {
    let n = g.len();
    let closed: Vec<BitSet> = (0..n).map(|v| g.closed_neighborhood(v)).collect();
    let mut uncovered = BitSet::full(n);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let v = (0..n)
            .max_by_key(|&v| {
                (
                    closed[v].intersection_count(&uncovered),
                    std::cmp::Reverse(v),
                )
            })
            .expect("nonempty");
        chosen.push(v);
        uncovered.difference_with(&closed[v]);
    }
    let mut i = 0;
    while i < chosen.len() {
        let mut rest = BitSet::new(n);
        for (j, &w) in chosen.iter().enumerate() {
            if j != i {
                rest.union_with(&closed[w]);
            }
        }
        if rest.count() == n {
            chosen.remove(i);
        } else {
            i += 1;
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Greedy packing of `targets`: vertices pairwise without a common coverer,
/// so each needs its own member of any dominating set.
pub fn packing_bound(g: &SeparationGraph, targets: &BitSet) -> usize {
    let n = g.len();
    let mut remaining = targets.clone();
    let mut count = 0;
    while let Some(u) = remaining.first() {
        count += 1;
        // everything within two steps of u shares a coverer with it
        let mut two_hop = g.closed_neighborhood(u);
        for v in g.neighbors(u).iter() {
            two_hop.union_with(g.neighbors(v));
        }
        debug_assert_eq!(two_hop.capacity(), n);
        remaining.difference_with(&two_hop);
    }
    count
}

/// Each member covers at most its closed neighbourhood within `targets`,
/// so at least `ceil(|targets| / max coverage)` members are needed.
pub fn coverage_bound(closed: &[BitSet], targets: &BitSet) -> usize {
    let need = targets.count();
    if need == 0 {
        return 0;
    }
    let best = closed
        .iter()
        .map(|c| c.intersection_count(targets))
        .max()
        .unwrap_or(0);
    need.div_ceil(best.max(1))
}

/// The better of the packing and coverage bounds on the whole graph.
pub fn domination_lower_bound(g: &SeparationGraph) -> usize {
    let all = BitSet::full(g.len());
    let closed: Vec<BitSet> = (0..g.len()).map(|v| g.closed_neighborhood(v)).collect();
    packing_bound(g, &all).max(coverage_bound(&closed, &all))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomOutcome {
    pub best: Vec<usize>,
    pub lower: usize,
    pub complete: bool,
    pub nodes: u64,
}

struct DomSearch<'a> {
    g: &'a SeparationGraph,
    closed: Vec<BitSet>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

impl DomSearch<'_> {
    fn solve(&mut self, covered: &BitSet) {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.aborted = true;
                return;
            }
        }
        let n = self.g.len();
        let mut uncovered = BitSet::full(n);
        uncovered.difference_with(covered);
        let Some(target) = uncovered
            .iter()
            .min_by_key(|&u| (self.closed[u].count(), u))
        else {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return;
        };
        let lower = packing_bound(self.g, &uncovered).max(coverage_bound(&self.closed, &uncovered));
        if self.current.len() + lower >= self.best.len() {
            return;
        }
        let mut options: Vec<usize> = self.closed[target].iter().collect();
        options.sort_by_key(|&v| {
            (
                std::cmp::Reverse(self.closed[v].intersection_count(&uncovered)),
                v,
            )
        });
        for v in options {
            if self.aborted {
                return;
            }
            let mut next = covered.clone();
            next.union_with(&self.closed[v]);
            self.current.push(v);
            self.solve(&next);
            self.current.pop();
        }
    }
}

/// Branch and bound on the uncovered vertex with fewest coverers.
pub fn exact_dominating_set(g: &SeparationGraph, budget: Option<u64>) -> DomOutcome {
    let n = g.len();
    let root_lower = domination_lower_bound(g);
    let greedy = greedy_dominating_set(g);
    if greedy.len() == root_lower {
        return DomOutcome {
            best: greedy,
            lower: root_lower,
            complete: true,
            nodes: 0,
        };
    }
    let mut search = DomSearch {
        g,
        closed: (0..n).map(|v| g.closed_neighborhood(v)).collect(),
        best: greedy,
        current: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    search.solve(&BitSet::new(n));
    let mut best = search.best;
    best.sort_unstable();
    let complete = !search.aborted;
    DomOutcome {
        lower: if complete { best.len() } else { root_lower },
        best,
        complete,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph() {
        // 0-1-2-3-4-5-6: optimum {1, 4, 6} or similar, size 3
        let g = SeparationGraph::from_edges(7, (0..6).map(|i| (i, i + 1)));
        let out = exact_dominating_set(&g, None);
        assert_eq!(out.best.len(), 3);
        assert!(g.is_dominating(&out.best));
        assert!(packing_bound(&g, &BitSet::full(7)) <= 3);
    }

    #[test]
    fn isolated_vertices_each_need_themselves() {
        let g = SeparationGraph::empty(5);
        assert_eq!(exact_dominating_set(&g, None).best, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn star_is_one() {
        let g = SeparationGraph::from_edges(6, (1..6).map(|i| (0, i)));
        assert_eq!(greedy_dominating_set(&g), vec![0]);
    }
}
