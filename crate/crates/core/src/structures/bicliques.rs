use serde::Serialize;

use super::{Combinations, EnumerationCap, StructureError};
use crate::graph::{Graph, VertexSet};
use crate::solvers::chromatic_number_of;

/// A `t`-biclique `(X, Y)`: `|X| = t` and `Y` complete to `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Biclique {
    pub x_set: VertexSet,
    pub y_set: VertexSet,
    pub value: usize,
}

impl Biclique {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        if self.x_set.intersects(self.y_set) {
            return Err("X and Y overlap".into());
        }
        for y in self.y_set {
            if !self.x_set.is_subset(g.adj(y)) {
                return Err(format!("{y} is not complete to X"));
            }
        }
        let chi = chromatic_number_of(g, self.y_set).map_err(|e| e.to_string())?;
        if chi != self.value {
            return Err(format!("value {} but chi(Y) = {chi}", self.value));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicliqueList {
    pub bicliques: Vec<Biclique>,
    pub truncated: bool,
}

impl BicliqueList {
    pub fn max_value(&self) -> Option<usize> {
        self.bicliques.iter().map(|b| b.value).max()
    }
}

/// One biclique per `t`-subset `X` with nonempty common neighbourhood,
/// taking `Y` maximal. `X` runs over `t`-subsets lexicographically.
pub fn enumerate_bicliques(g: &Graph, t: usize, cap: &EnumerationCap) -> Result<BicliqueList, StructureError> {
    if t < 1 {
        return Err(StructureError::Parameter("bicliques need t >= 1".into()));
    }
    let mut bicliques = Vec::new();
    for x_set in Combinations::new(g.vertices().to_vec(), t) {
        let y_set = g.common_neighborhood(x_set) - x_set;
        if y_set.is_empty() {
            continue;
        }
        if bicliques.len() == cap.max_items {
            return Ok(BicliqueList { bicliques, truncated: true });
        }
        let value = chromatic_number_of(g, y_set)?;
        bicliques.push(Biclique { x_set, y_set, value });
    }
    Ok(BicliqueList { bicliques, truncated: false })
}
