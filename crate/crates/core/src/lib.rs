//! Structural machinery for chi-boundedness experiments on small graphs:
//! forbidden-pattern detection, exact colouring and clique solvers,
//! balloons and bicliques, cutset-defined classes, exact big-integer bound
//! formulas, and corpus-level verification of the structural lemmas.

pub mod graph;
pub mod patterns;
pub mod solvers;
pub mod bounds;
pub mod structures;
pub mod corpus;
pub mod verify;
