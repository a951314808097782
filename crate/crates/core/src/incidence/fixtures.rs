//! Small designs with their natural groups, acting on points⊔blocks.

use super::{Design, DesignError};
use crate::permgroup::{PermGroup, Permutation};

/// `ℓ` disjoint blocks of size `k` on `kℓ` points, with the wreath product `S_k wr S_ℓ`.
pub fn degenerate_design(k: usize, l: usize) -> Result<(Design, PermGroup), DesignError> {
    if k < 1 || l < 1 {
        return Err(DesignError::InvalidParameters("need k, l >= 1".into()));
    }
    let v = k * l;
    let blocks: Vec<Vec<usize>> = (0..l).map(|i| (i * k..(i + 1) * k).collect()).collect();
    let d = Design::new(v, blocks)?;
    let mut gens = Vec::new();
    // S_k inside the first block
    if k >= 2 {
        gens.push(Permutation::from_cycles(v, &[vec![0, 1]]).unwrap());
    }
    if k >= 3 {
        gens.push(Permutation::from_cycles(v, &[(0..k).collect()]).unwrap());
    }
    // S_l permuting the blocks
    let shift = |by: usize, parts: usize| {
        let images: Vec<usize> = (0..v)
            .map(|x| {
                let (part, pos) = (x / k, x % k);
                if part < parts {
                    ((part + by) % parts) * k + pos
                } else {
                    x
                }
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    if l >= 2 {
        gens.push(shift(1, 2));
    }
    if l >= 3 {
        gens.push(shift(1, l));
    }
    let g = d.lift_point_group(&gens)?;
    Ok((d, g))
}

/// Points `(i, j)` of `Z_k × Z_ℓ` (index `i·ℓ + j`), blocks the rows `{(i, ·)}` and
/// columns `{(·, j)}`, with the translation group `Z_k × Z_ℓ`.
pub fn grid_design(k: usize, l: usize) -> Result<(Design, PermGroup), DesignError> {
    if !(k > l && l > 1) {
        return Err(DesignError::InvalidParameters("grid design needs k > l > 1".into()));
    }
    let v = k * l;
    let idx = |i: usize, j: usize| i * l + j;
    let mut blocks = Vec::new();
    for i in 0..k {
        blocks.push((0..l).map(|j| idx(i, j)).collect());
    }
    for j in 0..l {
        blocks.push((0..k).map(|i| idx(i, j)).collect());
    }
    let d = Design::new(v, blocks)?;
    let step_i: Vec<usize> = (0..v).map(|x| idx((x / l + 1) % k, x % l)).collect();
    let step_j: Vec<usize> = (0..v).map(|x| idx(x / l, (x % l + 1) % l)).collect();
    let gens = vec![
        Permutation::from_images(step_i).unwrap(),
        Permutation::from_images(step_j).unwrap(),
    ];
    let n = d.lift_point_group(&gens)?;
    Ok((d, n))
}

/// All `(v-1)`-subsets of `v` points, with `S_v`.
///
/// Counting gives replication `v-1` and pair index `v-2`.
pub fn complete_design(v: usize) -> Result<(Design, PermGroup), DesignError> {
    if v < 3 {
        return Err(DesignError::InvalidParameters("complete design needs v >= 3".into()));
    }
    let blocks: Vec<Vec<usize>> = (0..v)
        .map(|omit| (0..v).filter(|&x| x != omit).collect())
        .collect();
    let d = Design::new(v, blocks)?;
    let g = d.lift_point_group(PermGroup::symmetric(v).generators())?;
    Ok((d, g))
}
