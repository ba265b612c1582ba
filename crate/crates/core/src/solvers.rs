//! Exact clique number, chromatic number and independence number.
//!
//! All solvers are exact. The chromatic solver refuses graphs above its
//! vertex cap instead of falling back to a heuristic.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub const DEFAULT_CHROMATIC_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("chromatic number refused: {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub size: usize,
    pub members: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub size: usize,
    pub members: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    /// Colour index per vertex, `0..count`.
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
            && self.colors.iter().all(|&c| c < self.count)
            && (0..self.count).all(|c| self.colors.contains(&c))
    }
}

/// Greedy colouring of `p` in its vertex order; returns the vertices in
/// non-decreasing colour order with their colour numbers (1-based).
fn colour_sort(g: &Graph, p: VertexSet, order: &mut Vec<usize>, bounds: &mut Vec<usize>) {
    order.clear();
    bounds.clear();
    let mut uncoloured = p;
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut avail = uncoloured;
        while let Some(v) = avail.first() {
            avail -= g.adj(v).with(v);
            uncoloured.remove(v);
            order.push(v);
            bounds.push(colour);
        }
    }
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: VertexSet,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: VertexSet, mut p: VertexSet) {
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        colour_sort(self.g, p, &mut order, &mut bounds);
        for i in (0..order.len()).rev() {
            if current.len() + bounds[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            let next = current.with(v);
            let np = p & self.g.adj(v);
            if np.is_empty() {
                if next.len() > self.best.len() {
                    self.best = next;
                }
            } else {
                self.expand(next, np);
            }
            p.remove(v);
        }
    }
}

/// Maximum clique by branch and bound with greedy-colouring upper bounds.
pub fn clique_number(g: &Graph) -> Clique {
    let mut s = CliqueSearch { g, best: VertexSet::empty() };
    s.expand(VertexSet::empty(), g.vertices());
    Clique { size: s.best.len(), members: s.best }
}

/// Maximum independent set, as a maximum clique of the complement.
pub fn independence_number(g: &Graph) -> IndependentSet {
    let c = clique_number(&g.complement());
    IndependentSet { size: c.size, members: c.members }
}

/// DSATUR greedy colouring, used as the initial upper bound.
fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut classes: Vec<VertexSet> = Vec::new();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| {
                let sat = classes.iter().filter(|c| c.intersects(g.adj(v))).count();
                (sat, g.degree(v), std::cmp::Reverse(v))
            })
            .expect("uncoloured vertex");
        let c = classes.iter().position(|c| !c.intersects(g.adj(v))).unwrap_or(classes.len());
        if c == classes.len() {
            classes.push(VertexSet::empty());
        }
        classes[c].insert(v);
        colors[v] = c;
    }
    colors
}

struct ColourSearch<'a> {
    g: &'a Graph,
    k: usize,
    classes: Vec<VertexSet>,
    uncoloured: VertexSet,
}

impl ColourSearch<'_> {
    fn solve(&mut self) -> bool {
        if self.uncoloured.is_empty() {
            return true;
        }
        // Most saturated vertex; ties by uncoloured degree, then lowest id.
        let mut pick = None;
        let mut pick_key = (0, 0);
        for v in self.uncoloured {
            let sat = self.classes.iter().filter(|c| c.intersects(self.g.adj(v))).count();
            if sat == self.k {
                return false;
            }
            let key = (sat + 1, self.g.adj_in(v, self.uncoloured).len());
            if key > pick_key {
                pick_key = key;
                pick = Some(v);
            }
        }
        let v = pick.expect("nonempty");
        let used = self.classes.iter().position(|c| c.is_empty()).unwrap_or(self.k);
        // Opening a fresh colour: all empty classes are equivalent, try one.
        let limit = (used + 1).min(self.k);
        self.uncoloured.remove(v);
        for c in 0..limit {
            if self.classes[c].intersects(self.g.adj(v)) {
                continue;
            }
            self.classes[c].insert(v);
            if self.solve() {
                return true;
            }
            self.classes[c].remove(v);
        }
        self.uncoloured.insert(v);
        false
    }
}

/// A proper `k`-colouring if one exists. `clique` (if given) is pre-coloured
/// with distinct colours.
fn k_colouring(g: &Graph, k: usize, clique: VertexSet) -> Option<Vec<usize>> {
    if clique.len() > k {
        return None;
    }
    let mut classes = vec![VertexSet::empty(); k];
    for (c, v) in clique.iter().enumerate() {
        classes[c].insert(v);
    }
    let mut s = ColourSearch { g, k, classes, uncoloured: g.vertices() - clique };
    if !s.solve() {
        return None;
    }
    let mut colors = vec![0; g.n()];
    for (c, class) in s.classes.iter().enumerate() {
        for v in *class {
            colors[v] = c;
        }
    }
    Some(colors)
}

/// Exact chromatic number with a witnessing colouring.
///
/// Lower bound `omega`, upper bound DSATUR; each `k` in between is decided
/// by saturation-ordered backtracking with the maximum clique pre-coloured.
pub fn chromatic_number(g: &Graph) -> Result<Coloring, SolverError> {
    chromatic_number_capped(g, DEFAULT_CHROMATIC_CAP)
}

pub fn chromatic_number_capped(g: &Graph, cap: usize) -> Result<Coloring, SolverError> {
    let n = g.n();
    if n > cap {
        return Err(SolverError::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok(Coloring { colors: Vec::new(), count: 0 });
    }
    let clique = clique_number(g);
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    for k in clique.size..upper {
        if let Some(colors) = k_colouring(g, k, clique.members) {
            return Ok(Coloring { colors, count: k });
        }
    }
    Ok(Coloring { colors: greedy, count: upper })
}

/// `chi(G[X])` for a vertex subset.
pub fn chromatic_number_of(g: &Graph, x: VertexSet) -> Result<usize, SolverError> {
    let sub = g.induced(x).expect("subset of the host graph");
    Ok(chromatic_number(&sub.graph)?.count)
}

/// `omega(G[X])` for a vertex subset.
pub fn clique_number_of(g: &Graph, x: VertexSet) -> usize {
    clique_number(&g.induced(x).expect("subset of the host graph").graph).size
}

/// Value of the optimal binding function at one clique number, measured
/// over a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BindingPoint {
    /// No corpus graph has this clique number.
    NoGraph,
    Value(usize),
}

/// `max chi(G)` over corpus graphs with `omega(G) = w`.
pub fn optimal_binding_point<'a>(
    corpus: impl IntoIterator<Item = &'a Graph>,
    w: usize,
) -> Result<BindingPoint, SolverError> {
    let mut best = BindingPoint::NoGraph;
    for g in corpus {
        if clique_number(g).size != w {
            continue;
        }
        let chi = chromatic_number(g)?.count;
        best = match best {
            BindingPoint::Value(b) if b >= chi => best,
            _ => BindingPoint::Value(chi),
        };
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::PatternSpec;
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Graph::new(n, edges).unwrap()
    }

    /// Oracle: smallest k for which some assignment in `k^n` is proper.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.n();
        for k in 1..=n {
            let mut a = vec![0usize; n];
            loop {
                if g.edges().all(|(u, v)| a[u] != a[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    a[i] += 1;
                    if a[i] < k {
                        break;
                    }
                    a[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        0
    }

    fn brute_clique(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .map(VertexSet::from_bits)
            .filter(|&s| g.is_clique(s))
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(&Graph::cycle(5)).size, 2);
        let k3_2 = PatternSpec::CompleteMultipartite { d: 3, t: 2 }.build().unwrap();
        assert_eq!(clique_number(&k3_2).size, 3);
        let pet = Graph::petersen();
        assert_eq!(clique_number(&pet).size, 2);
        assert_eq!(brute_clique(&pet), 2);
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::cycle(5)).unwrap().count, 3);
        let k4_3 = PatternSpec::CompleteMultipartite { d: 4, t: 3 }.build().unwrap();
        assert_eq!(chromatic_number(&k4_3).unwrap().count, 4);
        let pet = chromatic_number(&Graph::petersen()).unwrap();
        assert_eq!(pet.count, 3);
        assert!(pet.is_proper(&Graph::petersen()));
        assert_eq!(brute_chromatic(&Graph::petersen()), 3);
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&Graph::cycle(5)).size, 2);
        assert_eq!(independence_number(&Graph::complete(6)).size, 1);
        let k44 = PatternSpec::Biclique { s: 4, t: 4 }.build().unwrap();
        let a = independence_number(&k44);
        assert_eq!(a.size, 4);
        assert!(k44.is_independent(a.members));
    }

    #[test]
    fn cap_refuses() {
        let big = Graph::empty(41).unwrap();
        assert_eq!(chromatic_number(&big), Err(SolverError::TooLarge { n: 41, cap: 40 }));
        assert_eq!(chromatic_number_capped(&big, 64).unwrap().count, 1);
    }

    #[test]
    fn solvers_match_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let g = random_graph(n, rng.gen_range(0.1..0.9), &mut rng);
            let col = chromatic_number(&g).unwrap();
            assert!(col.is_proper(&g));
            assert_eq!(col.count, brute_chromatic(&g), "{g:?}");
            let w = clique_number(&g);
            assert!(g.is_clique(w.members));
            assert_eq!(w.size, brute_clique(&g));
            assert_eq!(independence_number(&g.complement()).size, w.size);
            assert!(w.size <= col.count && col.count <= g.degeneracy().value + 1);
        }
    }

    #[test]
    fn larger_random_graphs_stay_proper() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let g = random_graph(30, 0.3, &mut rng);
            let col = chromatic_number(&g).unwrap();
            assert!(col.is_proper(&g));
            assert!(clique_number(&g).size <= col.count);
            assert!(col.count <= g.degeneracy().value + 1);
        }
    }

    #[test]
    fn binding_point_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(optimal_binding_point([&k3], 3).unwrap(), BindingPoint::Value(3));
        assert_eq!(optimal_binding_point([&k3], 2).unwrap(), BindingPoint::NoGraph);
        let c5 = Graph::cycle(5);
        let c4 = Graph::cycle(4);
        assert_eq!(optimal_binding_point([&c4, &c5], 2).unwrap(), BindingPoint::Value(3));
    }
}
