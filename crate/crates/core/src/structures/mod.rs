//! Composite structures: `(p, t)`-balloons, `t`-bicliques, minimal
//! cutsets, and membership in the classes built from them.

mod balloons;
mod bicliques;
mod classes;
mod cutsets;

pub use balloons::{balloon_layer_max_degree, enumerate_balloons, far_layer_profile, Balloon, BalloonList, FarLayerProfile};
pub use bicliques::{enumerate_bicliques, Biclique, BicliqueList};
pub use classes::{in_class_f, in_class_h, in_class_l, BindingTable, FClassReport, LCase, LCertificate};
pub use cutsets::{is_minimal_cutset, minimal_cutsets, CutsetList};

use thiserror::Error;

use crate::graph::VertexSet;
use crate::patterns::FamilyHit;
use crate::solvers::SolverError;

/// Limits for the exhaustive enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Largest graph an enumerator accepts.
    pub max_vertices: usize,
    /// Enumeration stops (and reports truncation) after this many items.
    pub max_items: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap { max_vertices: 16, max_items: 1_000_000 }
    }
}

impl EnumerationCap {
    fn check(&self, n: usize) -> Result<(), StructureError> {
        if n > self.max_vertices {
            Err(StructureError::TooLarge { n, cap: self.max_vertices })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{n} vertices exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("enumeration truncated at {0} items")]
    Truncated(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition failed: {reason}")]
    Precondition { reason: String, witness: Option<FamilyHit> },
    #[error("binding table has no value at {0}")]
    BindingUndefined(usize),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Subsets of `pool` in increasing size, lexicographic within a size.
pub(crate) fn subsets_by_size(pool: VertexSet) -> impl Iterator<Item = VertexSet> {
    let items = pool.to_vec();
    let n = items.len();
    (0..=n).flat_map(move |k| Combinations::new(items.clone(), k))
}

/// `k`-subsets of a sorted list in lexicographic order.
pub(crate) struct Combinations {
    items: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(items: Vec<usize>, k: usize) -> Self {
        let done = k > items.len();
        Combinations { items, idx: (0..k).collect(), done }
    }
}

impl Iterator for Combinations {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let (n, k) = (self.items.len(), self.idx.len());
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_size_lex_order() {
        let pool: VertexSet = [1, 4, 6].into_iter().collect();
        let all: Vec<Vec<usize>> = subsets_by_size(pool).map(|s| s.to_vec()).collect();
        assert_eq!(
            all,
            vec![vec![], vec![1], vec![4], vec![6], vec![1, 4], vec![1, 6], vec![4, 6], vec![1, 4, 6]]
        );
        assert_eq!(Combinations::new(vec![0, 1], 3).count(), 0);
        assert_eq!(Combinations::new((0..6).collect(), 3).count(), 20);
    }
}
