//! Finite permutation groups given by generators.

mod bsgs;
mod group;
mod perm;

pub use bsgs::Bsgs;
pub use group::{direct_product, InducedAction, PermGroup, ENUMERATION_CAP};
pub use perm::{parse_cycles, Permutation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("image {0} appears twice; not a bijection")]
    NotBijection(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("tuples of mixed arity")]
    MixedArity,
    #[error("group is not transitive on the given set")]
    NotTransitive,
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("invalid parts: {0}")]
    InvalidParts(String),
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
}
