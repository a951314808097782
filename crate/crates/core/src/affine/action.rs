use serde::{Deserialize, Serialize};

use super::linalg::{primitive_root, Matrix, Subspace, VectorSpace};
use super::AffineError;
use crate::permgroup::{PermGroup, Permutation};

/// `v -> vA + t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineElement {
    pub matrix: Matrix,
    pub translation: Vec<u32>,
}

impl AffineElement {
    pub fn new(matrix: Matrix, translation: Vec<u32>) -> Result<Self, AffineError> {
        if !matrix.is_square() || translation.len() != matrix.dim() {
            return Err(AffineError::DimensionMismatch);
        }
        if !matrix.is_invertible() {
            return Err(AffineError::Singular(0));
        }
        let p = matrix.p;
        Ok(AffineElement {
            translation: translation.into_iter().map(|x| x % p).collect(),
            matrix,
        })
    }

    pub fn linear(matrix: Matrix) -> Result<Self, AffineError> {
        let d = matrix.dim();
        AffineElement::new(matrix, vec![0; d])
    }

    pub fn translation(p: u32, t: Vec<u32>) -> Self {
        AffineElement {
            matrix: Matrix::identity(p, t.len()),
            translation: t,
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.matrix.p;
        self.matrix
            .apply(v)
            .into_iter()
            .zip(&self.translation)
            .map(|(x, &t)| (x + t) % p)
            .collect()
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            matrix: self.matrix.mul(&other.matrix),
            translation: other.apply(&self.translation),
        }
    }

    pub fn permutation(&self, space: &VectorSpace) -> Permutation {
        let images = (0..space.size())
            .map(|i| space.index(&self.apply(&space.coords(i))))
            .collect();
        Permutation::from_images(images).expect("invertible affine maps are bijections")
    }
}

/// The permutation group on `p^d` vectors generated by the given affine maps.
pub fn point_action(elements: &[AffineElement], d: usize, p: u32) -> Result<PermGroup, AffineError> {
    let space = VectorSpace::new(d, p)?;
    let mut gens = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if e.matrix.p != p || e.matrix.dim() != d || e.translation.len() != d {
            return Err(AffineError::DimensionMismatch);
        }
        if !e.matrix.is_invertible() {
            return Err(AffineError::Singular(i));
        }
        gens.push(e.permutation(&space));
    }
    Ok(PermGroup::new(space.size(), gens)?)
}

/// Translations by the unit vectors.
pub fn translation_generators(d: usize, p: u32) -> Vec<AffineElement> {
    (0..d)
        .map(|i| {
            let mut t = vec![0; d];
            t[i] = 1;
            AffineElement::translation(p, t)
        })
        .collect()
}

/// Transvections `I + E_ij` and `diag(w, 1, ..., 1)` with `w` primitive.
pub fn gl_generators(d: usize, p: u32) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                gens.push(Matrix::transvection(p, d, i, j));
            }
        }
    }
    if p > 2 {
        let mut diag = vec![1; d];
        diag[0] = primitive_root(p);
        gens.push(Matrix::diagonal(p, &diag));
    }
    gens
}

/// Generators of the stabiliser of `<e_1>` in `GL(d, p)` (row convention).
pub fn first_line_stabilizer_generators(d: usize, p: u32) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 1..d {
        for j in 0..d {
            if i != j {
                gens.push(Matrix::transvection(p, d, i, j));
            }
        }
    }
    if p > 2 {
        let w = primitive_root(p);
        for slot in 0..d.min(2) {
            let mut diag = vec![1; d];
            diag[slot] = w;
            gens.push(Matrix::diagonal(p, &diag));
        }
    }
    gens
}

/// An invertible matrix whose first row is `u`.
pub fn basis_with_first_row(u: &[u32], p: u32) -> Result<Matrix, AffineError> {
    let d = u.len();
    let mut rows = vec![u.to_vec()];
    for j in 0..d {
        let mut e = vec![0; d];
        e[j] = 1;
        let mut trial = rows.clone();
        trial.push(e.clone());
        if Matrix::new(p, trial)?.rank() == rows.len() + 1 {
            rows.push(e);
        }
        if rows.len() == d {
            break;
        }
    }
    if rows.len() != d {
        return Err(AffineError::ZeroVector);
    }
    Matrix::new(p, rows)
}

/// Generators of the stabiliser of `<u>` in `GL(d, p)`.
pub fn line_stabilizer_generators(u: &[u32], p: u32) -> Result<Vec<Matrix>, AffineError> {
    // q has first row u, so e_1 q = u and P = q^{-1} sends u to e_1
    let q = basis_with_first_row(u, p)?;
    let q_inv = q.inverse().expect("basis matrix is invertible");
    Ok(first_line_stabilizer_generators(u.len(), p)
        .iter()
        .map(|a| q_inv.mul(a).mul(&q))
        .collect())
}

/// Cosets of `m`, each sorted, ordered by least element.
pub fn cosets(m: &Subspace, space: &VectorSpace) -> Vec<Vec<usize>> {
    let elements = m.elements();
    let mut seen = vec![false; space.size()];
    let mut out = Vec::new();
    for v in 0..space.size() {
        if seen[v] {
            continue;
        }
        let base = space.coords(v);
        let mut coset: Vec<usize> = elements.iter().map(|e| space.index(&space.add(&base, e))).collect();
        coset.sort_unstable();
        for &x in &coset {
            seen[x] = true;
        }
        out.push(coset);
    }
    out
}
