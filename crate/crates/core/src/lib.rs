//! Linear forest decompositions of small graphs.
//!
//! The crate bundles an exact linear-arboricity solver, robust expansion
//! checks, deficiency matchings, degree-sequence realization, exact Hamilton
//! searches and a regularization pipeline that turns nearly regular dense
//! graphs into decompositions with at most `ceil((Δ+1)/2)` linear forests.

pub mod budget;
pub mod decompose;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod hamilton;
pub mod harness;
pub mod io;
pub mod matching;
pub mod rational;
pub mod realize;

pub use budget::{Budget, SearchOutcome};
pub use error::{Error, Result};
pub use graph::{
    validate_decomposition, vertex_classes, DecompositionVerdict, DiGraph, Edge, LinearForest,
    LinearForestDecomposition, MultiGraph, SimpleGraph, VertexClasses,
};
pub use rational::{parse_rational, Rational};

/// `ceil((Δ+1)/2)`, the number of forests every decomposition should fit in.
pub fn conjecture_bound(max_degree: usize) -> usize {
    (max_degree + 2) / 2
}

/// `ceil(Δ/2)`, a lower bound on the linear arboricity.
pub fn degree_lower_bound(max_degree: usize) -> usize {
    max_degree.div_ceil(2)
}
