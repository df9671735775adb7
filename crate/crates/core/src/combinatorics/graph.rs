use super::bitset::BitSet;

/// Undirected simple graph stored as adjacency bit sets.
///
/// As a separation graph, `{i, j}` is an edge iff the pair fails strict
/// separation: `d_{T,n}(K[i], K[j]) ≤ ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationGraph {
    adj: Vec<BitSet>,
}

impl SeparationGraph {
    pub fn empty(n: usize) -> Self {
        SeparationGraph {
            adj: (0..n).map(|_| BitSet::new(n)).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = SeparationGraph::empty(n);
        for (i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i].insert(j);
            self.adj[j].insert(i);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    /// `N[i] = N(i) ∪ {i}`
    pub fn closed_neighborhood(&self, i: usize) -> BitSet {
        let mut s = self.adj[i].clone();
        s.insert(i);
        s
    }

    /// Whether `i ↦ i + 1 (mod n)` is an automorphism, making the graph
    /// circulant and hence vertex-transitive.
    pub fn is_circulant(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            self.degree(i) == self.degree((i + 1) % n)
                && self
                    .neighbors(i)
                    .iter()
                    .all(|j| self.has_edge((i + 1) % n, (j + 1) % n))
        })
    }

    pub fn complement_adjacency(&self) -> Vec<BitSet> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = BitSet::full(n);
                s.difference_with(&self.adj[i]);
                s.remove(i);
                s
            })
            .collect()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &i)| set[a + 1..].iter().all(|&j| !self.has_edge(i, j)))
    }

    pub fn is_dominating(&self, set: &[usize]) -> bool {
        let mut covered = BitSet::new(self.len());
        for &v in set {
            covered.union_with(&self.closed_neighborhood(v));
        }
        covered.count() == self.len()
    }

    /// Connected components, each sorted ascending, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.adj[v].iter() {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn induced(&self, vertices: &[usize]) -> SeparationGraph {
        let mut g = SeparationGraph::empty(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}
