//! Exact independent domination and domination numbers for small graphs,
//! isomorph-free enumeration of subcubic and cubic graph classes, and
//! verification pipelines for weight-based upper bounds on `i(G)`.

pub mod canon;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod solvers;
pub mod structure;

pub use canon::{canonical_form, canonical_key, CanonicalKey};
pub use graph::{DegreeProfile, Girth, Graph, GraphError, VertexSet, MAX_ORDER};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
