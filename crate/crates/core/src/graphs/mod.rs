//! Bipartite graphs, the design/graph dictionary, distance transitivity,
//! starlike normal quotients, subdivision graphs and intersection arrays.

mod arrays;
mod dictionary;
mod dot;
mod graph;
mod quotient;
mod subdivision;
mod theorem;
mod transitivity;

pub use arrays::{
    intersection_arrays, intersection_arrays_with, parity_identities, predicted_arrays, ArrayMode,
    ArrayPair, BiregularityWitness, Branch, Condition, IntersectionArray, ParityCheck,
    PredictedArrays,
};
pub use dictionary::{adjacency_design, incidence_graph, AdjacencyDesign};
pub use dot::to_dot;
pub use graph::{BipartiteGraph, DistancePartition, Graph};
pub use quotient::{
    is_edge_transitive, is_starlike, is_starlike_either, normal_quotient, orbit_quotient,
    star_invariants, star_quotient_equivalence, Quotient, StarEquivalence, StarInvariants,
};
pub use subdivision::{recover_base, subdivision, subdivision_group};
pub use theorem::{
    quasisymmetry_check, r2_analysis, theorem_main_check, theorem_properties_check, Hypotheses,
    MainReport, PropertiesReport, QuasiSymmetry, R2Report, R2Shape,
};
pub use transitivity::{
    is_locally_s_arc_transitive, is_locally_s_distance_transitive, is_s_arc_transitive,
    local_distance_transitivity, s_arc_report, s_arcs_from, ArcOrbitVerdict, LevelVerdict,
    LocalDtReport, SArcReport,
};

use crate::incidence::DesignError;
use crate::permgroup::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at {0}")]
    SelfLoop(usize),
    #[error("edge {u}-{w} lies inside one bipart")]
    NotBipartite { u: usize, w: usize },
    #[error("group degree {found} does not match {expected} vertices")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("generator {0} is not a graph automorphism")]
    NotAutomorphism(usize),
    #[error("generator {0} moves vertices between biparts")]
    MovesBiparts(usize),
    #[error("N is not a normal subgroup of G")]
    NotNormal,
    #[error("G is not edge-transitive")]
    NotEdgeTransitive,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("a bipart is empty")]
    EmptyBipart,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("not distance-biregular: {0:?}")]
    NotDistanceBiregular(Box<BiregularityWitness>),
    #[error("cannot recover base graph: {0}")]
    RecoverBase(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Design(#[from] DesignError),
}
