//! Named pattern graphs and induced / not-necessarily-induced detection.
//!
//! Every constructor puts its distinguished vertex at id 0: the centre of
//! a broom, star or two-arm star, the triangle vertex carrying a flag's
//! path, the root of a uniform tree.

mod search;
mod spec;

pub use search::{find_induced, find_multipartite_subgraph, find_subgraph, Occurrence};
pub use spec::{PatternError, PatternSpec};

use serde::Serialize;

use crate::graph::Graph;

/// A pattern paired with its built graph so repeated checks don't rebuild it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub spec: PatternSpec,
    pub graph: Graph,
}

impl Pattern {
    pub fn new(spec: PatternSpec) -> Result<Self, PatternError> {
        let graph = spec.build()?;
        Ok(Pattern { spec, graph })
    }

    /// Finds an occurrence in `host`, using the part-assignment search for
    /// multipartite patterns in subgraph mode.
    pub fn find_in(&self, host: &Graph, induced: bool) -> Option<Occurrence> {
        if !induced {
            if let Some(parts) = self.spec.multipartite_parts() {
                return find_multipartite_subgraph(host, &parts);
            }
            return find_subgraph(host, &self.graph);
        }
        find_induced(host, &self.graph)
    }
}

/// The witness returned when a graph is not free of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyHit {
    pub pattern: String,
    pub occurrence: Occurrence,
}

/// Outcome of [`is_family_free`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCheck {
    pub free: bool,
    pub witness: Option<FamilyHit>,
}

/// A family of patterns checked in one mode (induced or subgraph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub members: Vec<Pattern>,
    pub induced: bool,
}

impl Family {
    pub fn new(specs: &[PatternSpec], induced: bool) -> Result<Self, PatternError> {
        let members = specs.iter().cloned().map(Pattern::new).collect::<Result<_, _>>()?;
        Ok(Family { members, induced })
    }

    pub fn check(&self, g: &Graph) -> FamilyCheck {
        for p in &self.members {
            if let Some(occurrence) = p.find_in(g, self.induced) {
                return FamilyCheck {
                    free: false,
                    witness: Some(FamilyHit { pattern: p.spec.to_string(), occurrence }),
                };
            }
        }
        FamilyCheck { free: true, witness: None }
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.check(g).free
    }
}

pub fn make_pattern(spec: &PatternSpec) -> Result<Graph, PatternError> {
    spec.build()
}

/// Checks that no member of `family` occurs in `g`; on failure reports the
/// first member found (in family order) with its occurrence.
pub fn is_family_free(g: &Graph, family: &[PatternSpec], induced: bool) -> Result<FamilyCheck, PatternError> {
    if family.is_empty() {
        return Err(PatternError::EmptyFamily);
    }
    Ok(Family::new(family, induced)?.check(g))
}
