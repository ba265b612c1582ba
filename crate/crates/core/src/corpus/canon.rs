//! Canonical labelling by individualization-refinement.
//!
//! The key of a vertex order is the upper triangle of the relabelled
//! adjacency matrix read column by column, first pair most significant.
//! The canonical key is the least key over all leaves of the search tree;
//! leaves differing only by a transposition of twin vertices are skipped.

use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`canonical_key`].
pub const MAX_CANONICAL: usize = 16;

type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: VertexSet = cells[s].iter().copied().collect();
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cell.iter().map(|&v| (g.adj_in(v, splitter).len(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        changed |= start == 0 && i < keyed.len();
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

fn key_of(g: &Graph, order: &[usize]) -> u128 {
    let mut key = 0u128;
    for j in 1..order.len() {
        for i in 0..j {
            key = key << 1 | g.has_edge(order[i], order[j]) as u128;
        }
    }
    key
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(u128, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let key = key_of(g, &order);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        let twin = tried.iter().any(|&w| g.adj(v).without(w) == g.adj(w).without(v));
        if twin {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(g, refine(g, next), best);
    }
}

/// Canonical key and the vertex order realising it (`order[i]` is the
/// vertex placed at position `i`).
pub fn canonical_labelling(g: &Graph) -> (u128, Vec<usize>) {
    assert!(g.n() <= MAX_CANONICAL, "canonical labelling is limited to {MAX_CANONICAL} vertices");
    if g.n() == 0 {
        return (0, Vec::new());
    }
    let mut keyed: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.degree(v), v)).collect();
    keyed.sort_unstable();
    let mut cells: Partition = Vec::new();
    for (d, v) in keyed {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == d => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    search(g, refine(g, cells), &mut best);
    best.expect("search reaches a leaf")
}

pub fn canonical_key(g: &Graph) -> u128 {
    canonical_labelling(g).0
}

/// The relabelled copy of `g` whose key is canonical.
pub fn canonical_form(g: &Graph) -> Graph {
    let (_, order) = canonical_labelling(g);
    let mut perm = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.permuted(&perm)
}
