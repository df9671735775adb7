//! Maximum independent sets of a separation graph, i.e. maximal
//! `(n, ε)`-separated subsets.
//!
//! The exact solver searches for a maximum clique of the complement graph,
//! bounding each branch with a greedy colouring of the candidate set.

use super::bitset::BitSet;
use super::graph::SeparationGraph;

/// Minimum-degree greedy independent set, lowest index on ties.
pub fn greedy_independent_set(g: &SeparationGraph) -> Vec<usize> {
    let mut alive = BitSet::full(g.len());
    let mut chosen = Vec::new();
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| (g.neighbors(v).intersection_count(&alive), v))
            .expect("nonempty");
        chosen.push(v);
        alive.remove(v);
        alive.difference_with(g.neighbors(v));
    }
    chosen
}

/// Size of a partition of the vertices into cliques; every independent set
/// meets each clique at most once, so this bounds the maximum independent
/// set from above. Takes the better of two greedy partitions; on a
/// circulant graph also uses `α ≤ n / ω` with a greedy clique for `ω`.
pub fn clique_cover_bound(g: &SeparationGraph) -> usize {
    let cover = sequential_cover(g).min(grown_cover(g));
    if g.len() > 2 && g.is_circulant() {
        cover.min(g.len() / greedy_clique(g, 0))
    } else {
        cover
    }
}

fn greedy_clique(g: &SeparationGraph, seed: usize) -> usize {
    let mut size = 1;
    let mut cand = g.neighbors(seed).clone();
    while !cand.is_empty() {
        let u = cand
            .iter()
            .max_by_key(|&u| {
                (
                    g.neighbors(u).intersection_count(&cand),
                    std::cmp::Reverse(u),
                )
            })
            .expect("nonempty");
        size += 1;
        cand.remove(u);
        cand.intersect_with(g.neighbors(u));
    }
    size
}

fn sequential_cover(g: &SeparationGraph) -> usize {
    // (members' common neighbourhood) per clique
    let mut cliques: Vec<BitSet> = Vec::new();
    for v in 0..g.len() {
        match cliques.iter_mut().find(|common| common.contains(v)) {
            Some(common) => common.intersect_with(g.neighbors(v)),
            None => cliques.push(g.neighbors(v).clone()),
        }
    }
    cliques.len()
}

// seed each clique at the uncovered vertex with fewest uncovered
// neighbours, then add the candidate keeping most candidates alive
fn grown_cover(g: &SeparationGraph) -> usize {
    let mut uncovered = BitSet::full(g.len());
    let mut count = 0;
    while !uncovered.is_empty() {
        let v = uncovered
            .iter()
            .min_by_key(|&v| (g.neighbors(v).intersection_count(&uncovered), v))
            .expect("nonempty");
        uncovered.remove(v);
        let mut cand = g.neighbors(v).clone();
        cand.intersect_with(&uncovered);
        while !cand.is_empty() {
            let u = cand
                .iter()
                .max_by_key(|&u| {
                    (
                        g.neighbors(u).intersection_count(&cand),
                        std::cmp::Reverse(u),
                    )
                })
                .expect("nonempty");
            uncovered.remove(u);
            cand.remove(u);
            cand.intersect_with(g.neighbors(u));
        }
        count += 1;
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisOutcome {
    pub best: Vec<usize>,
    pub complete: bool,
    pub nodes: u64,
}

struct CliqueSearch<'a> {
    comp: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

impl CliqueSearch<'_> {
    fn colour_order(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut order = Vec::with_capacity(p.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.comp[v]);
                uncoloured.remove(v);
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, mut p: BitSet) {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.aborted = true;
                return;
            }
        }
        let order = self.colour_order(&p);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() || self.aborted {
                return;
            }
            self.current.push(v);
            let mut next = p.clone();
            next.intersect_with(&self.comp[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.remove(v);
        }
    }
}

/// Branch and bound for a maximum independent set, seeded with the greedy
/// solution. With `budget = None` the search always completes.
pub fn exact_independent_set(g: &SeparationGraph, budget: Option<u64>) -> MisOutcome {
    let greedy = greedy_independent_set(g);
    if greedy.len() == clique_cover_bound(g) {
        let mut best = greedy;
        best.sort_unstable();
        return MisOutcome {
            best,
            complete: true,
            nodes: 0,
        };
    }
    let comp = g.complement_adjacency();
    let mut search = CliqueSearch {
        comp: &comp,
        best: greedy,
        current: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    if !g.is_empty() {
        search.expand(BitSet::full(g.len()));
    }
    let mut best = search.best;
    best.sort_unstable();
    MisOutcome {
        best,
        complete: !search.aborted,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SeparationGraph {
        SeparationGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn empty_and_complete_graphs() {
        let g = SeparationGraph::empty(7);
        assert_eq!(exact_independent_set(&g, None).best.len(), 7);
        let k =
            SeparationGraph::from_edges(5, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))));
        assert_eq!(exact_independent_set(&k, None).best.len(), 1);
        assert_eq!(clique_cover_bound(&k), 1);
    }

    #[test]
    fn odd_cycle() {
        let g = cycle(7);
        let out = exact_independent_set(&g, None);
        assert_eq!(out.best.len(), 3);
        assert!(g.is_independent(&out.best));
        assert!(clique_cover_bound(&g) >= 3);
    }

    #[test]
    fn zero_budget_reports_incomplete() {
        // Petersen graph: independence number 4, no clique cover below 5
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = SeparationGraph::from_edges(10, outer.chain(spokes).chain(inner));
        assert_eq!(exact_independent_set(&g, None).best.len(), 4);
        let out = exact_independent_set(&g, Some(0));
        assert!(!out.complete);
        assert!(g.is_independent(&out.best));
    }
}
