use std::collections::HashMap;

use serde::Serialize;

use super::{subsets_by_size, Combinations, EnumerationCap, StructureError};
use crate::graph::{Graph, VertexSet};
use crate::solvers::chromatic_number_of;

/// A `(p, t)`-balloon: an induced path `v_1 .. v_p` whose last vertex lies
/// in a `t`-connected body `Y`, with the path otherwise kept away from `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Balloon {
    pub path: Vec<usize>,
    pub body: VertexSet,
    /// `v_p` together with the body vertices not adjacent to it.
    pub z_set: VertexSet,
    /// `chi(G[Z])`.
    pub value: usize,
}

impl Balloon {
    /// The attachment vertex `v_p`.
    pub fn tip(&self) -> usize {
        *self.path.last().expect("balloon paths are nonempty")
    }

    /// Re-checks every defining condition from scratch. Connectivity is
    /// checked by brute force over small cuts rather than by flows.
    pub fn validate(&self, g: &Graph, t: usize) -> Result<(), String> {
        let p = self.path.len();
        if p == 0 {
            return Err("empty path".into());
        }
        let path_set: VertexSet = self.path.iter().copied().collect();
        if path_set.len() != p || self.path.iter().any(|&v| v >= g.n()) {
            return Err("path repeats or leaves the graph".into());
        }
        for i in 0..p {
            for j in i + 1..p {
                if g.has_edge(self.path[i], self.path[j]) != (j == i + 1) {
                    return Err(format!("path is not induced at ({}, {})", self.path[i], self.path[j]));
                }
            }
        }
        let tip = self.tip();
        if !self.body.contains(tip) || self.path[..p - 1].iter().any(|&v| self.body.contains(v)) {
            return Err("only v_p may lie in the body".into());
        }
        if p >= 3 && self.path[..p - 2].iter().any(|&v| g.adj(v).intersects(self.body)) {
            return Err("an early path vertex touches the body".into());
        }
        if p >= 2 && g.adj(self.path[p - 2]) & self.body != VertexSet::singleton(tip) {
            return Err("v_p is not the unique body neighbour of v_{p-1}".into());
        }
        if !brute_t_connected(g, self.body, t) {
            return Err(format!("body is not {t}-connected"));
        }
        let z = (self.body - g.adj(tip)).with(tip);
        if z != self.z_set {
            return Err("Z does not match the body".into());
        }
        match chromatic_number_of(g, z) {
            Ok(v) if v == self.value => Ok(()),
            Ok(v) => Err(format!("value {} but chi(Z) = {v}", self.value)),
            Err(e) => Err(e.to_string()),
        }
    }
}

fn brute_t_connected(g: &Graph, body: VertexSet, t: usize) -> bool {
    if body.len() < t + 1 {
        return false;
    }
    let items = body.to_vec();
    (0..t).all(|k| Combinations::new(items.clone(), k).all(|cut| g.is_connected_within(body - cut)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalloonList {
    pub balloons: Vec<Balloon>,
    pub truncated: bool,
}

/// Induced paths on `p` vertices as ordered sequences, lexicographically.
fn induced_paths(g: &Graph, p: usize) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, p: usize, path: &mut Vec<usize>, blocked: VertexSet, out: &mut Vec<Vec<usize>>) {
        if path.len() == p {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("nonempty");
        for u in g.adj(last) - blocked {
            path.push(u);
            // Later vertices must avoid everything up to and including `last`'s
            // neighbourhood, except through `u`.
            grow(g, p, path, blocked | g.adj(last) | VertexSet::singleton(u), out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        let mut path = vec![v];
        grow(g, p, &mut path, VertexSet::singleton(v), &mut out);
    }
    out
}

/// All `(p, t)`-balloons of `g`, up to `cap.max_items`.
///
/// Paths in lexicographic vertex order; for each path the admissible body
/// vertices are computed once, and bodies are visited by increasing size
/// then lexicographically. A body must be connected before its
/// `t`-connectivity is tested; both results are memoised per body.
pub fn enumerate_balloons(g: &Graph, p: usize, t: usize, cap: &EnumerationCap) -> Result<BalloonList, StructureError> {
    if p < 1 || t < 1 {
        return Err(StructureError::Parameter("balloons need p, t >= 1".into()));
    }
    cap.check(g.n())?;
    let mut connected: HashMap<VertexSet, bool> = HashMap::new();
    let mut values: HashMap<VertexSet, usize> = HashMap::new();
    let mut balloons = Vec::new();
    for path in induced_paths(g, p) {
        let tip = path[p - 1];
        let mut forbidden: VertexSet = path[..p - 1].iter().copied().collect();
        if p >= 3 {
            forbidden |= g.neighborhood(path[..p - 2].iter().copied().collect());
        }
        if p >= 2 {
            forbidden |= g.adj(path[p - 2]).without(tip);
        }
        let pool = g.vertices() - forbidden - VertexSet::singleton(tip);
        for extra in subsets_by_size(pool) {
            if extra.len() < t {
                continue;
            }
            let body = extra.with(tip);
            let ok = *connected.entry(body).or_insert_with(|| g.is_t_connected_within(t, body));
            if !ok {
                continue;
            }
            if balloons.len() == cap.max_items {
                return Ok(BalloonList { balloons, truncated: true });
            }
            let z_set = (body - g.adj(tip)).with(tip);
            let value = match values.get(&z_set) {
                Some(&v) => v,
                None => {
                    let v = chromatic_number_of(g, z_set)?;
                    values.insert(z_set, v);
                    v
                }
            };
            balloons.push(Balloon { path: path.clone(), body, z_set, value });
        }
    }
    Ok(BalloonList { balloons, truncated: false })
}

/// The part of a balloon body at distance at least two from `v_p`, with
/// distances measured inside `G[Y]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FarLayerProfile {
    pub far: VertexSet,
    /// `Delta(G[far])`; `None` when `far` is empty.
    pub max_degree: Option<usize>,
    /// Vertices of `far` attaining `max_degree`, each with its layer index.
    pub max_degree_vertices: Vec<(usize, usize)>,
    /// Number of body neighbours of `v_p`.
    pub tip_degree: usize,
}

pub fn far_layer_profile(g: &Graph, b: &Balloon) -> FarLayerProfile {
    let tip = b.tip();
    let layers = g.layers_within(VertexSet::singleton(tip), b.body).expect("tip lies in the body");
    let far = layers.at_least(2);
    let degree = |v: usize| g.adj_in(v, far).len();
    let max_degree = far.iter().map(degree).max();
    let max_degree_vertices = match max_degree {
        Some(m) => far
            .iter()
            .filter(|&v| degree(v) == m)
            .map(|v| (v, layers.index_of(v).expect("reachable")))
            .collect(),
        None => Vec::new(),
    };
    FarLayerProfile { far, max_degree, max_degree_vertices, tip_degree: g.adj_in(tip, b.body).len() }
}

/// `Delta(Y[N^{>=2}(v_p)])` with layers computed inside `G[Y]`; `None` when
/// no body vertex is at distance two or more from `v_p`.
pub fn balloon_layer_max_degree(g: &Graph, b: &Balloon) -> Option<usize> {
    far_layer_profile(g, b).max_degree
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(g: &Graph, p: usize, t: usize) -> Vec<Balloon> {
        let list = enumerate_balloons(g, p, t, &EnumerationCap::default()).unwrap();
        assert!(!list.truncated);
        list.balloons
    }

    /// Unpruned oracle: every ordered vertex sequence and every subset.
    fn brute_balloons(g: &Graph, p: usize, t: usize) -> Vec<(Vec<usize>, VertexSet)> {
        let n = g.n();
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..p {
            seqs = seqs
                .into_iter()
                .flat_map(|s| (0..n).filter(|v| !s.contains(v)).map(|v| [s.clone(), vec![v]].concat()).collect::<Vec<_>>())
                .collect();
        }
        let mut out = Vec::new();
        for path in seqs {
            for mask in 0u64..1 << n {
                let body = VertexSet::from_bits(mask);
                let cand = Balloon { path: path.clone(), body, z_set: VertexSet::empty(), value: 0 };
                // Check everything except Z/value.
                let z = (body - g.adj(*path.last().unwrap())).with(*path.last().unwrap());
                let value = if body.contains(*path.last().unwrap()) { chromatic_number_of(g, z).unwrap() } else { 0 };
                let cand = Balloon { z_set: z, value, ..cand };
                if cand.validate(g, t).is_ok() {
                    out.push((path.clone(), body));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.size_lex_cmp(b.1)));
        out
    }

    #[test]
    fn c5_single_tip_balloons() {
        let c5 = Graph::cycle(5);
        let bs = all(&c5, 1, 2);
        assert_eq!(bs.len(), 5);
        for b in &bs {
            assert_eq!(b.body, c5.vertices());
            assert_eq!(b.value, 2);
            assert_eq!(b.z_set.len(), 3);
            assert_eq!(balloon_layer_max_degree(&c5, b), Some(1));
        }
    }

    #[test]
    fn p3_smallest_balloon() {
        let p3 = Graph::path(3);
        let bs = all(&p3, 2, 1);
        let wanted = bs.iter().find(|b| b.path == vec![0, 1]).unwrap();
        assert_eq!(wanted.body, [1, 2].into_iter().collect());
        assert_eq!(wanted.z_set, VertexSet::singleton(1));
        assert_eq!(wanted.value, 1);
    }

    #[test]
    fn k4_balloon_value_one() {
        let k4 = Graph::complete(4);
        let bs = all(&k4, 1, 3);
        assert_eq!(bs.len(), 4);
        for b in &bs {
            assert_eq!(b.value, 1);
            assert_eq!(balloon_layer_max_degree(&k4, b), None);
        }
    }

    #[test]
    fn c6_far_layer() {
        let c6 = Graph::cycle(6);
        let bs = all(&c6, 1, 2);
        assert!(!bs.is_empty());
        for b in &bs {
            assert_eq!(b.body, c6.vertices());
            // Far layers: two vertices at distance 2 plus the antipode, a P3.
            let prof = far_layer_profile(&c6, b);
            assert_eq!(prof.far.len(), 3);
            assert_eq!(prof.max_degree, Some(2));
            let layers = c6.layers(VertexSet::singleton(b.tip())).unwrap();
            assert_eq!(prof.far, layers.at_least(2));
        }
    }

    #[test]
    fn matches_unpruned_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let n = rng.gen_range(3..=7);
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.55)).collect();
            let g = Graph::new(n, edges).unwrap();
            for (p, t) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
                let fast: Vec<_> = all(&g, p, t).into_iter().map(|b| (b.path, b.body)).collect();
                assert_eq!(fast, brute_balloons(&g, p, t), "p={p} t={t} {g:?}");
            }
        }
    }

    #[test]
    fn every_balloon_revalidates() {
        let g = Graph::petersen();
        for (p, t) in [(1, 3), (2, 2), (3, 2)] {
            for b in all(&g, p, t).iter().take(200) {
                b.validate(&g, t).unwrap();
                // The tip has at least t body neighbours.
                assert!(far_layer_profile(&g, b).tip_degree >= t);
            }
        }
    }

    #[test]
    fn caps() {
        let g = Graph::cycle(5);
        let cap = EnumerationCap { max_vertices: 16, max_items: 2 };
        let list = enumerate_balloons(&g, 1, 2, &cap).unwrap();
        assert!(list.truncated);
        assert_eq!(list.balloons.len(), 2);
        let small = EnumerationCap { max_vertices: 4, max_items: 10 };
        assert!(matches!(enumerate_balloons(&g, 1, 2, &small), Err(StructureError::TooLarge { .. })));
    }
}
