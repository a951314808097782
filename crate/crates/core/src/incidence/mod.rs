//! Point-block incidence structures and the design predicates built on them.

mod design;
pub mod fixtures;
mod properties;
mod resolution;

pub use design::{Design, DesignParameters, DualDesign, Labels};
pub use properties::{
    is_nicely_affine, is_pairwise_transitive, is_parallel_class, pair_classes,
    stabilizer_two_transitive_on_classes, ClassVerdict, NicelyAffine, NotNicelyAffine,
    PairClasses, PairwiseReport,
};
pub use resolution::{all_parallel_classes, resolution, resolution_by_group, Resolution};

use crate::permgroup::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("empty block")]
    EmptyBlock,
    #[error("point {0} repeated within a block")]
    DuplicatePoint(usize),
    #[error("point {point} out of range for v = {v}")]
    PointOutOfRange { point: usize, v: usize },
    #[error("bad labels: {0}")]
    Labels(String),
    #[error("generator {0} does not preserve incidence")]
    NotAutomorphism(usize),
    #[error("design has repeated blocks")]
    RepeatedBlocks,
    #[error("design has two points on the same blocks")]
    RepeatedPoints,
    #[error("need at least two blocks")]
    TooFewBlocks,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
