//! Affine geometry over prime fields `GF(p)` only.

mod action;
mod construction;
mod linalg;
mod regular;
mod selfdual;

use thiserror::Error;

use crate::graphs::GraphError;
use crate::incidence::DesignError;
use crate::permgroup::GroupError;

pub use action::{
    basis_with_first_row, cosets, first_line_stabilizer_generators, gl_generators, line_stabilizer_generators,
    point_action, translation_generators, AffineElement,
};
pub use construction::{
    affine_group, affine_space_design, build_design, construction_check, subspace_orbit, AffineInstance, Conditions,
    ConstructionInput, ConstructionReport,
};
pub use linalg::{dot, is_prime, primitive_root, rref, GFVector, Matrix, Subspace, VectorSpace};
pub use regular::{regular_analysis, RegularReport};
pub use selfdual::{selfdual_design, Duality, SelfDualInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("matrix {0} is singular")]
    Singular(usize),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("zero vector not allowed")]
    ZeroVector,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
