//! Permutation groups, incidence designs and bipartite graphs for studying
//! locally distance-transitive graphs with star normal quotients and the
//! pairwise-transitive, nicely affine designs that correspond to them.
//!
//! Vertex conventions used throughout: a design with `v` points and `b`
//! blocks lives on the domain `0..v+b`, points first. Its incidence graph
//! uses the same indexing, so a group acting on the design acts on the graph
//! without relabelling.

pub mod affine;
pub mod catalog;
pub mod graphs;
pub mod incidence;
pub mod permgroup;

pub use graphs::{BipartiteGraph, Graph, GraphError, IntersectionArray};
pub use incidence::{Design, DesignError};
pub use permgroup::{GroupError, PermGroup, Permutation};

/// Version stamped into every machine-readable report.
pub const REPORT_SCHEMA_VERSION: u32 = 1;
