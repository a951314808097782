//! Inputs shared by the benchmarks.

use starlike_core::affine::affine_space_design;
use starlike_core::catalog::Instance;

/// `affine_space(d, p)` normalised as a catalog instance.
pub fn affine_instance(d: usize, p: u32) -> Instance {
    let inst = affine_space_design(d, p).expect("valid parameters");
    Instance::from_design(format!("affine_space({d},{p})"), inst.design, inst.g, inst.n).expect("consistent instance")
}
