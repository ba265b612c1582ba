//! Immutable simple graphs over vertex ids `0..n` with bitset adjacency.
//!
//! Every graph fits in a single `u64` row per vertex, so `n` is capped at
//! [`MAX_VERTICES`]. All set algebra (neighbourhoods, layers, components)
//! is done on [`VertexSet`] words.

mod flow;
mod set;

use std::collections::VecDeque;

use thiserror::Error;

pub use flow::local_vertex_connectivity;
pub use set::{Iter as VertexSetIter, VertexSet};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("source set must be nonempty")]
    EmptySource,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// An induced subgraph together with the map back to host vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    /// `host[i]` is the host vertex that became vertex `i`.
    pub host: Vec<usize>,
}

/// BFS distance layers from a source set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub source: VertexSet,
    /// `layers[i - 1]` is `N^i(source)`.
    pub layers: Vec<VertexSet>,
    pub unreachable: VertexSet,
}

impl LayerDecomposition {
    /// `N^i(source)` for `i >= 1`; empty past the last layer.
    pub fn layer(&self, i: usize) -> VertexSet {
        match i {
            0 => self.source,
            i => self.layers.get(i - 1).copied().unwrap_or_default(),
        }
    }

    /// `N^{>=i}(source)` (reachable vertices only).
    pub fn at_least(&self, i: usize) -> VertexSet {
        let skip = i.saturating_sub(1);
        let mut s = if i == 0 { self.source } else { VertexSet::empty() };
        for l in self.layers.iter().skip(skip) {
            s |= *l;
        }
        s
    }

    /// Layer index of `v`, `None` when unreachable.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        if self.source.contains(v) {
            return Some(0);
        }
        self.layers.iter().position(|l| l.contains(v)).map(|i| i + 1)
    }
}

/// Degeneracy together with a witnessing elimination order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    pub value: usize,
    /// Each vertex has at most `value` neighbours later in this order.
    pub order: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::empty(); n] })
    }

    /// Builds a graph from adjacency rows; rows are symmetrised and the
    /// diagonal is rejected.
    pub fn from_adjacency(rows: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        for (u, row) in rows.into_iter().enumerate() {
            for v in row {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Returns a copy with the edge `uv` toggled.
    pub fn with_edge_toggled(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u].remove(v);
            g.adj[v].remove(u);
        } else {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Returns a copy with a new vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Self, GraphError> {
        let mut g = self.clone();
        let v = g.n;
        if v + 1 > MAX_VERTICES {
            return Err(GraphError::TooLarge(v + 1));
        }
        if let Some(bad) = (nbrs - VertexSet::full(v)).first() {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: v + 1 });
        }
        g.n += 1;
        g.adj.push(nbrs);
        for u in nbrs {
            g.adj[u].insert(v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.adj[u] - VertexSet::full(u + 1)).iter().map(move |v| (u, v))
        })
    }

    /// `N(X)`: vertices outside `X` with a neighbour in `X`.
    pub fn neighborhood(&self, x: VertexSet) -> VertexSet {
        let mut out = VertexSet::empty();
        for v in x {
            out |= self.adj[v];
        }
        out - x
    }

    /// Neighbours of `v` inside `within`.
    #[inline]
    pub fn adj_in(&self, v: usize, within: VertexSet) -> VertexSet {
        self.adj[v] & within
    }

    /// Vertices adjacent to every member of `x` (excluding `x` itself).
    pub fn common_neighborhood(&self, x: VertexSet) -> VertexSet {
        let mut out = self.vertices();
        for v in x {
            out &= self.adj[v];
        }
        out - x
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n).map(|v| (all - self.adj[v]).without(v)).collect();
        Graph { n: self.n, adj }
    }

    pub fn is_clique(&self, x: VertexSet) -> bool {
        x.iter().all(|v| (x.without(v)).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, x: VertexSet) -> bool {
        x.iter().all(|v| !self.adj[v].intersects(x))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertices())
    }

    fn check_set(&self, x: VertexSet) -> Result<(), GraphError> {
        match (x - self.vertices()).first() {
            Some(vertex) => Err(GraphError::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// `G[X]`, relabelled to `0..|X|` in increasing host order.
    pub fn induced(&self, x: VertexSet) -> Result<Induced, GraphError> {
        self.check_set(x)?;
        let host = x.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in host.iter().enumerate() {
            index[v] = i;
        }
        let adj = host
            .iter()
            .map(|&v| (self.adj[v] & x).iter().map(|u| index[u]).collect())
            .collect();
        Ok(Induced { graph: Graph { n: host.len(), adj }, host })
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![VertexSet::empty(); self.n];
        for u in 0..self.n {
            adj[perm[u]] = self.adj[u].iter().map(|v| perm[v]).collect();
        }
        Graph { n: self.n, adj }
    }

    /// Distance layers `N^i(X)` by multi-source BFS.
    pub fn layers(&self, x: VertexSet) -> Result<LayerDecomposition, GraphError> {
        self.layers_within(x, self.vertices())
    }

    /// Distance layers computed inside `G[within]`; vertices outside
    /// `within` are ignored entirely.
    pub fn layers_within(&self, x: VertexSet, within: VertexSet) -> Result<LayerDecomposition, GraphError> {
        self.check_set(x | within)?;
        if x.is_empty() {
            return Err(GraphError::EmptySource);
        }
        let mut seen = x;
        let mut frontier = x;
        let mut layers = Vec::new();
        loop {
            let next = (self.neighborhood(frontier) & within) - seen;
            if next.is_empty() {
                break;
            }
            layers.push(next);
            seen |= next;
            frontier = next;
        }
        Ok(LayerDecomposition { source: x, layers, unreachable: within - seen })
    }

    /// The component of `G[within]` containing `v`.
    pub fn component_of(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let next = (self.neighborhood(frontier) & within) - comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Connected components of `G[within]`, ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v, rest);
            rest -= c;
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(v) => self.component_of(v, within) == within,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// `t`-connectivity: at least `t + 1` vertices and no vertex cut of
    /// size below `t`. Decided by Menger: every nonadjacent pair must be
    /// joined by `t` internally disjoint paths.
    pub fn is_t_connected(&self, t: usize) -> bool {
        self.is_t_connected_within(t, self.vertices())
    }

    /// [`Graph::is_t_connected`] for `G[within]`.
    pub fn is_t_connected_within(&self, t: usize, within: VertexSet) -> bool {
        let size = within.len();
        if size < t + 1 {
            return false;
        }
        if t == 0 {
            return true;
        }
        if !self.is_connected_within(within) {
            return false;
        }
        if t == 1 {
            return true;
        }
        // A vertex of degree < t exposes a small cut (its neighbourhood).
        if within.iter().any(|v| self.adj_in(v, within).len() < t) {
            return false;
        }
        for u in within {
            let non = within - self.adj[u] - VertexSet::full(u + 1);
            for v in non {
                if local_vertex_connectivity(self, within, u, v, t) < t {
                    return false;
                }
            }
        }
        true
    }

    /// Degeneracy via repeated removal of a minimum-degree vertex (ties
    /// broken by lowest id).
    pub fn degeneracy(&self) -> Degeneracy {
        let mut alive = self.vertices();
        let mut order = Vec::with_capacity(self.n);
        let mut value = 0;
        while !alive.is_empty() {
            let v = alive
                .iter()
                .min_by_key(|&v| (self.adj_in(v, alive).len(), v))
                .expect("nonempty");
            value = value.max(self.adj_in(v, alive).len());
            order.push(v);
            alive.remove(v);
        }
        Degeneracy { value, order }
    }

    /// BFS distances from `s` (`usize::MAX` when unreachable).
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for v in self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Convenience constructors for the standard families.
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("valid petersen")
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let shift = self.n;
        Graph::new(
            self.n + other.n,
            self.edges().chain(other.edges().map(|(u, v)| (u + shift, v + shift))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
        // Floyd-Warshall oracle.
        let n = g.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for u in 0..n {
            d[u][u] = 0;
            for v in g.adj(u) {
                d[u][v] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    fn brute_t_connected(g: &Graph, t: usize) -> bool {
        let n = g.n();
        if n < t + 1 {
            return false;
        }
        for mask in 0u64..(1 << n) {
            let s = VertexSet::from_bits(mask);
            if s.len() < t && !g.is_connected_within(g.vertices() - s) {
                return false;
            }
        }
        true
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn build_examples() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!(k1.max_degree(), 0);
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.degrees().iter().all(|&d| d == 2));
        let dup = Graph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(GraphError::TooLarge(65)));
    }

    #[test]
    fn layer_examples() {
        let p4 = Graph::path(4);
        let l = p4.layers(VertexSet::singleton(0)).unwrap();
        assert_eq!(l.layers, vec![VertexSet::singleton(1), VertexSet::singleton(2), VertexSet::singleton(3)]);
        let k4 = Graph::complete(4);
        let l = k4.layers(VertexSet::singleton(0)).unwrap();
        assert_eq!(l.layers, vec![[1, 2, 3].into_iter().collect()]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let l = two.layers(VertexSet::singleton(0)).unwrap();
        assert_eq!(l.layers, vec![VertexSet::singleton(1)]);
        assert_eq!(l.unreachable, [2, 3].into_iter().collect());
        assert_eq!(p4.layers(VertexSet::empty()), Err(GraphError::EmptySource));
        assert_eq!(l.at_least(1), VertexSet::singleton(1));
    }

    #[test]
    fn layers_match_all_pairs_oracle() {
        for seed in 0..60 {
            let n = 5 + (seed as usize % 45);
            let g = random_graph(n, 0.08 + (seed % 5) as f64 * 0.05, seed);
            let d = all_pairs(&g);
            let x: VertexSet = [0, n / 2].into_iter().collect();
            let l = g.layers(x).unwrap();
            for u in 0..n {
                let dist = x.iter().map(|s| d[s][u]).min().unwrap();
                match l.index_of(u) {
                    Some(i) => assert_eq!(i, dist),
                    None => assert!(dist > n),
                }
            }
            // Every layer-i vertex has a neighbour in layer i-1 and none below.
            for i in 1..=l.layers.len() {
                for v in l.layer(i) {
                    assert!(g.adj(v).intersects(l.layer(i - 1)));
                    for j in 0..i.saturating_sub(1) {
                        assert!(!g.adj(v).intersects(l.layer(j)));
                    }
                }
            }
        }
    }

    #[test]
    fn induced_examples() {
        let c5 = Graph::cycle(5);
        let sub = c5.induced([0, 1, 2, 3].into_iter().collect()).unwrap();
        assert_eq!(sub.graph, Graph::path(4));
        assert_eq!(sub.host, vec![0, 1, 2, 3]);
        let k5 = Graph::complete(5);
        assert_eq!(k5.induced([1, 3, 4].into_iter().collect()).unwrap().graph, Graph::complete(3));
        assert_eq!(c5.induced(c5.vertices()).unwrap().graph, c5);
        assert!(c5.induced(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn component_examples() {
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3)).unwrap();
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert_eq!(Graph::complete(1).components().len(), 1);
        assert_eq!(Graph::path(5).components(), vec![VertexSet::full(5)]);
    }

    #[test]
    fn t_connectivity_examples() {
        assert!(Graph::cycle(5).is_t_connected(2));
        assert!(!Graph::path(4).is_t_connected(2));
        assert!(Graph::complete(4).is_t_connected(3));
        assert!(!Graph::complete(4).is_t_connected(4));
        assert!(Graph::petersen().is_t_connected(3));
        assert!(!Graph::petersen().is_t_connected(4));
    }

    #[test]
    fn t_connectivity_matches_brute_force() {
        for seed in 0..150 {
            let n = 2 + (seed as usize % 9);
            let g = random_graph(n, 0.3 + (seed % 6) as f64 * 0.1, 1000 + seed);
            for t in 1..=4 {
                assert_eq!(g.is_t_connected(t), brute_t_connected(&g, t), "seed {seed} t {t} {g:?}");
            }
        }
    }

    #[test]
    fn degeneracy_examples() {
        let tree = Graph::new(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(tree.degeneracy().value, 1);
        assert_eq!(Graph::cycle(7).degeneracy().value, 2);
        assert_eq!(Graph::complete(6).degeneracy().value, 5);
    }

    #[test]
    fn degeneracy_order_replays() {
        for seed in 0..50 {
            let g = random_graph(12, 0.4, 77 + seed);
            let d = g.degeneracy();
            let mut later = g.vertices();
            for &v in &d.order {
                later.remove(v);
                assert!(g.adj_in(v, later).len() <= d.value);
            }
            // Some subgraph actually attains the value.
            let mut alive = g.vertices();
            let mut attained = false;
            for &v in &d.order {
                if alive.iter().all(|u| g.adj_in(u, alive).len() >= d.value) {
                    attained = true;
                }
                alive.remove(v);
            }
            assert!(attained || d.value == 0);
        }
    }

    #[test]
    fn complement_involution() {
        let g = random_graph(9, 0.5, 3);
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().edge_count() + g.edge_count(), 36);
    }
}
