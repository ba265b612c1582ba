use serde::Serialize;

use crate::graph::{Graph, VertexSet};

/// An injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    /// `mapping[i]` is the host image of pattern vertex `i`.
    pub mapping: Vec<usize>,
    pub induced: bool,
}

impl Occurrence {
    /// Re-checks the occurrence from scratch.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.mapping.len() != pattern.n() || self.mapping.iter().any(|&v| v >= host.n()) {
            return false;
        }
        let image: VertexSet = self.mapping.iter().copied().collect();
        if image.len() != self.mapping.len() {
            return false;
        }
        for a in 0..pattern.n() {
            for b in a + 1..pattern.n() {
                let host_edge = host.has_edge(self.mapping[a], self.mapping[b]);
                if pattern.has_edge(a, b) && !host_edge {
                    return false;
                }
                if self.induced && !pattern.has_edge(a, b) && host_edge {
                    return false;
                }
            }
        }
        true
    }

    pub fn image(&self) -> VertexSet {
        self.mapping.iter().copied().collect()
    }
}

/// Pattern vertices in BFS order from vertex 0, restarting at the lowest
/// unvisited vertex for each further component.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = VertexSet::empty();
    for root in 0..pattern.n() {
        if seen.contains(root) {
            continue;
        }
        seen.insert(root);
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            for u in pattern.adj(order[i]) - seen {
                seen.insert(u);
                order.push(u);
            }
            i += 1;
        }
    }
    order
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    induced: bool,
    order: Vec<usize>,
    /// Host vertices that pass the degree filters for each pattern vertex.
    allowed: Vec<VertexSet>,
    mapping: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize, used: VertexSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let h = self.order[depth];
        let mut cand = self.allowed[h] - used;
        for &prev in &self.order[..depth] {
            let img = self.mapping[prev];
            if self.pattern.has_edge(h, prev) {
                cand &= self.host.adj(img);
            } else if self.induced {
                cand -= self.host.adj(img);
            }
            if cand.is_empty() {
                return false;
            }
        }
        for v in cand {
            self.mapping[h] = v;
            if self.extend(depth + 1, used.with(v)) {
                return true;
            }
        }
        false
    }
}

fn find(host: &Graph, pattern: &Graph, induced: bool) -> Option<Occurrence> {
    let (n, k) = (host.n(), pattern.n());
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(Occurrence { mapping: Vec::new(), induced });
    }
    let allowed = (0..k)
        .map(|h| {
            let d = pattern.degree(h);
            let nd = k - 1 - d;
            host.vertices()
                .iter()
                .filter(|&v| host.degree(v) >= d && (!induced || n - 1 - host.degree(v) >= nd))
                .collect()
        })
        .collect();
    let mut m = Matcher { host, pattern, induced, order: search_order(pattern), allowed, mapping: vec![0; k] };
    m.extend(0, VertexSet::empty()).then_some(Occurrence { mapping: m.mapping, induced })
}

/// Finds an induced copy of `pattern` in `host`.
///
/// Backtracking over pattern vertices in BFS order, host candidates in
/// increasing id, so the result is the lexicographically least occurrence
/// for that order. Candidates are filtered by degree and non-degree and
/// narrowed by the adjacency rows of already-mapped vertices.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Occurrence> {
    find(host, pattern, true)
}

/// Finds a (not necessarily induced) copy of `pattern` in `host`.
pub fn find_subgraph(host: &Graph, pattern: &Graph) -> Option<Occurrence> {
    find(host, pattern, false)
}

/// Finds a complete multipartite subgraph with the given part sizes by
/// choosing the parts one at a time from the common neighbourhood of the
/// parts already chosen. The mapping follows the vertex layout of the
/// multipartite pattern constructors (parts laid out consecutively).
pub fn find_multipartite_subgraph(host: &Graph, parts: &[usize]) -> Option<Occurrence> {
    let total: usize = parts.iter().sum();
    if total > host.n() {
        return None;
    }
    let mut chosen = Vec::with_capacity(total);
    if choose_part(host, parts, 0, host.vertices(), None, &mut chosen) {
        Some(Occurrence { mapping: chosen, induced: false })
    } else {
        None
    }
}

fn choose_part(
    host: &Graph,
    parts: &[usize],
    i: usize,
    cand: VertexSet,
    prev_min: Option<usize>,
    chosen: &mut Vec<usize>,
) -> bool {
    if i == parts.len() {
        return true;
    }
    let remaining: usize = parts[i..].iter().sum();
    if cand.len() < remaining {
        return false;
    }
    // Equal-size consecutive parts are interchangeable; order them by their
    // smallest member.
    let floor = match prev_min {
        Some(m) if i > 0 && parts[i - 1] == parts[i] => Some(m),
        _ => None,
    };
    pick(host, parts, i, cand, floor, cand, parts[i], VertexSet::empty(), chosen)
}

#[allow(clippy::too_many_arguments)]
fn pick(
    host: &Graph,
    parts: &[usize],
    i: usize,
    cand: VertexSet,
    floor: Option<usize>,
    pool: VertexSet,
    need: usize,
    part: VertexSet,
    chosen: &mut Vec<usize>,
) -> bool {
    if need == 0 {
        let next = (cand - part) & host.common_neighborhood(part);
        return choose_part(host, parts, i + 1, next, part.first(), chosen);
    }
    if pool.len() < need {
        return false;
    }
    for v in pool {
        if part.is_empty() && floor.is_some_and(|f| v <= f) {
            continue;
        }
        chosen.push(v);
        let rest = pool - VertexSet::full(v + 1);
        if pick(host, parts, i, cand, floor, rest, need - 1, part.with(v), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_examples() {
        assert!(find_induced(&Graph::cycle(7), &Graph::path(6)).is_some());
        assert!(find_induced(&Graph::cycle(6), &Graph::path(6)).is_none());
        assert!(find_induced(&Graph::complete(4), &Graph::cycle(4)).is_none());
    }

    #[test]
    fn subgraph_examples() {
        let k22 = Graph::cycle(4);
        assert!(find_subgraph(&Graph::complete(4), &k22).is_some());
        assert!(find_subgraph(&Graph::cycle(6), &k22).is_none());
        assert!(find_multipartite_subgraph(&Graph::complete(6), &[3, 3]).is_some());
        assert!(find_multipartite_subgraph(&Graph::complete(5), &[3, 3]).is_none());
    }

    #[test]
    fn lexicographically_least() {
        // P3 in C5: centre is mapped first (BFS from pattern vertex 0 = an
        // endpoint), so endpoint 0 -> host 0, centre -> host 1, end -> host 2.
        let occ = find_induced(&Graph::cycle(5), &Graph::path(3)).unwrap();
        assert_eq!(occ.mapping, vec![0, 1, 2]);
    }

    #[test]
    fn multipartite_with_unequal_parts() {
        let k23 = Graph::new(5, (0..2).flat_map(|a| (2..5).map(move |b| (a, b)))).unwrap();
        let occ = find_multipartite_subgraph(&k23, &[2, 3]).unwrap();
        assert_eq!(occ.mapping.len(), 5);
        let occ = find_multipartite_subgraph(&k23, &[3, 2]).unwrap();
        assert_eq!(occ.mapping.len(), 5);
        assert!(find_multipartite_subgraph(&k23, &[3, 3]).is_none());
    }

    #[test]
    fn empty_pattern_trivially_found() {
        assert!(find_induced(&Graph::complete(3), &Graph::empty(0).unwrap()).is_some());
    }
}
