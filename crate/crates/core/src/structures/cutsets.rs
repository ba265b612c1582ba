use serde::Serialize;

use super::{subsets_by_size, EnumerationCap, StructureError};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetList {
    pub cutsets: Vec<VertexSet>,
    pub truncated: bool,
}

/// Whether `x` separates `g` with every vertex of `x` seeing every
/// component of `g - x`.
pub fn is_minimal_cutset(g: &Graph, x: VertexSet) -> bool {
    let comps = g.components_within(g.vertices() - x);
    comps.len() >= 2 && x.iter().all(|v| comps.iter().all(|&c| g.adj(v).intersects(c)))
}

/// All minimal cutsets of a connected graph, smallest first.
pub fn minimal_cutsets(g: &Graph, cap: &EnumerationCap) -> Result<CutsetList, StructureError> {
    cap.check(g.n())?;
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let mut cutsets = Vec::new();
    for x in subsets_by_size(g.vertices()) {
        if x.is_empty() || !is_minimal_cutset(g, x) {
            continue;
        }
        if cutsets.len() == cap.max_items {
            return Ok(CutsetList { cutsets, truncated: true });
        }
        cutsets.push(x);
    }
    Ok(CutsetList { cutsets, truncated: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cuts(g: &Graph) -> Vec<VertexSet> {
        minimal_cutsets(g, &EnumerationCap::default()).unwrap().cutsets
    }

    #[test]
    fn examples() {
        assert_eq!(cuts(&Graph::path(3)), vec![VertexSet::singleton(1)]);
        let c4: Vec<Vec<usize>> = cuts(&Graph::cycle(4)).iter().map(|s| s.to_vec()).collect();
        assert_eq!(c4, vec![vec![0, 2], vec![1, 3]]);
        assert!(cuts(&Graph::complete(4)).is_empty());
        let split = Graph::path(2).disjoint_union(&Graph::path(2)).unwrap();
        assert_eq!(minimal_cutsets(&split, &EnumerationCap::default()), Err(StructureError::Disconnected));
    }

    #[test]
    fn coincides_with_inclusion_minimal_separators() {
        // Every listed set disconnects and no proper subset of it separates
        // the same pair of components; checked on the Petersen graph and C7.
        for g in [Graph::petersen(), Graph::cycle(7)] {
            for x in cuts(&g) {
                let comps = g.components_within(g.vertices() - x);
                assert!(comps.len() >= 2);
                for v in x {
                    for &c in &comps {
                        assert!(g.adj(v).intersects(c));
                    }
                }
            }
        }
        // In C_n the minimal cutsets are exactly the nonadjacent pairs.
        let c7 = Graph::cycle(7);
        assert_eq!(cuts(&c7).len(), 7 * 4 / 2);
    }
}
