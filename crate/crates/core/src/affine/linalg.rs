use serde::{Deserialize, Serialize};

use super::AffineError;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| !p.is_multiple_of(i))
}

pub(crate) fn check_prime(p: u32) -> Result<(), AffineError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(AffineError::NotPrime(p))
    }
}

fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pow(p: u32, mut a: u32, mut e: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(p: u32, a: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow(p, a, p - 2)
}

/// Smallest generator of the multiplicative group of GF(p).
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&w| (1..p - 1).all(|e| !(p - 1).is_multiple_of(e) || pow(p, w, e) != 1))
        .expect("GF(p)* is cyclic")
}

pub fn dot(p: u32, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| (acc + mul(p, x, y)) % p)
}

/// Lexicographic indexing of GF(p)^d, first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSpace {
    pub d: usize,
    pub p: u32,
    size: usize,
}

impl VectorSpace {
    pub fn new(d: usize, p: u32) -> Result<Self, AffineError> {
        check_prime(p)?;
        if d == 0 {
            return Err(AffineError::InvalidParameters("dimension must be positive".into()));
        }
        let size = (p as usize)
            .checked_pow(d as u32)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| AffineError::InvalidParameters(format!("p^d too large for p={p}, d={d}")))?;
        Ok(VectorSpace { d, p, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn coords(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.d];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.p as usize) as u32;
            index /= self.p as usize;
        }
        out
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, s: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| mul(self.p, s, x)).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.d];
        v[i] = 1;
        v
    }

    pub fn vector(&self, index: usize) -> GFVector {
        GFVector {
            p: self.p,
            coords: self.coords(index),
        }
    }
}

/// A vector of GF(p)^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GFVector {
    pub p: u32,
    pub coords: Vec<u32>,
}

impl GFVector {
    pub fn new(p: u32, coords: Vec<u32>) -> Result<Self, AffineError> {
        check_prime(p)?;
        if coords.iter().any(|&c| c >= p) {
            return Err(AffineError::InvalidParameters("coordinate not reduced mod p".into()));
        }
        Ok(GFVector { p, coords })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Position in the lexicographic enumeration of GF(p)^d.
    pub fn index(&self) -> usize {
        self.coords.iter().fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }
}

/// Row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    pub p: u32,
    pub rows: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self, AffineError> {
        check_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AffineError::DimensionMismatch);
        }
        Ok(Matrix {
            p,
            rows: rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect(),
        })
    }

    pub fn identity(p: u32, d: usize) -> Self {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| u32::from(i == j)).collect())
            .collect();
        Matrix { p, rows }
    }

    /// `I + E_ij`.
    pub fn transvection(p: u32, d: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::identity(p, d);
        m.rows[i][j] = (m.rows[i][j] + 1) % p;
        m
    }

    pub fn diagonal(p: u32, entries: &[u32]) -> Self {
        let mut m = Matrix::identity(p, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.rows[i][i] = e % p;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.rows.len())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let rows = self.rows.iter().map(|r| row_times(self.p, r, other)).collect();
        Matrix { p: self.p, rows }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        row_times(self.p, v, self)
    }

    pub fn rank(&self) -> usize {
        rref(self.p, self.rows.clone()).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.dim()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let d = self.dim();
        let p = self.p;
        let mut aug: Vec<Vec<u32>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..d).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| aug[r][col] != 0)?;
            aug.swap(col, pivot);
            let s = inv(p, aug[col][col]);
            for x in aug[col].iter_mut() {
                *x = mul(p, *x, s);
            }
            for r in 0..d {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    let pivot_row = aug[col].clone();
                    for (x, y) in aug[r].iter_mut().zip(&pivot_row) {
                        *x = (*x + p - mul(p, f, *y)) % p;
                    }
                }
            }
        }
        Some(Matrix {
            p,
            rows: aug.into_iter().map(|r| r[d..].to_vec()).collect(),
        })
    }
}

fn row_times(p: u32, v: &[u32], m: &Matrix) -> Vec<u32> {
    let mut out = vec![0u32; m.cols()];
    for (&a, row) in v.iter().zip(&m.rows) {
        if a == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = (*o + mul(p, a, x)) % p;
        }
    }
    out
}

/// Reduced row echelon form with zero rows removed.
pub fn rref(p: u32, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let s = inv(p, rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = mul(p, *x, s);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul(p, f, *y)) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Subspace of GF(p)^d stored by its reduced echelon basis, so equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    pub p: u32,
    pub d: usize,
    pub basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(d: usize, p: u32, vectors: Vec<Vec<u32>>) -> Result<Self, AffineError> {
        check_prime(p)?;
        if vectors.iter().any(|v| v.len() != d) {
            return Err(AffineError::DimensionMismatch);
        }
        let vectors = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|x| x % p).collect())
            .collect();
        Ok(Subspace {
            p,
            d,
            basis: rref(p, vectors),
        })
    }

    pub fn zero(d: usize, p: u32) -> Self {
        Subspace {
            p,
            d,
            basis: Vec::new(),
        }
    }

    pub fn whole(d: usize, p: u32) -> Self {
        Subspace {
            p,
            d,
            basis: Matrix::identity(p, d).rows,
        }
    }

    /// `{x : x·n = 0}` for a nonzero `n`.
    pub fn orthogonal(d: usize, p: u32, n: &[u32]) -> Result<Self, AffineError> {
        let pivot = n
            .iter()
            .position(|&x| x % p != 0)
            .ok_or(AffineError::ZeroVector)?;
        let s = inv(p, n[pivot] % p);
        let mut vectors = Vec::new();
        for j in (0..d).filter(|&j| j != pivot) {
            // e_j - (n_j / n_pivot) e_pivot
            let mut v = vec![0; d];
            v[j] = 1;
            v[pivot] = (p - mul(p, n[j] % p, s)) % p;
            vectors.push(v);
        }
        Subspace::span(d, p, vectors)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(self.p, rows).len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace {
            p: self.p,
            d: self.d,
            basis: rref(self.p, rows),
        }
    }

    /// Image under `v -> vA`.
    pub fn image(&self, a: &Matrix) -> Subspace {
        Subspace {
            p: self.p,
            d: self.d,
            basis: rref(self.p, self.basis.iter().map(|r| a.apply(r)).collect()),
        }
    }

    /// All elements, as vectors, in lexicographic order of their coefficient tuples.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.d]];
        for row in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for a in 0..self.p {
                    next.push(
                        v.iter()
                            .zip(row)
                            .map(|(&x, &y)| (x + mul(self.p, a, y)) % self.p)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }

    pub fn element_indices(&self, space: &VectorSpace) -> Vec<usize> {
        let mut idx: Vec<usize> = self.elements().iter().map(|v| space.index(v)).collect();
        idx.sort_unstable();
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(3), 2);
    }

    #[test]
    fn indexing_round_trip() {
        let v = VectorSpace::new(3, 3).unwrap();
        assert_eq!(v.size(), 27);
        assert_eq!(v.coords(5), vec![0, 1, 2]);
        for i in 0..27 {
            assert_eq!(v.index(&v.coords(i)), i);
            assert_eq!(v.vector(i).index(), i);
        }
        assert!(VectorSpace::new(3, 4).is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let a = Matrix::new(3, vec![vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let b = a.inverse().unwrap();
        assert_eq!(a.mul(&b), Matrix::identity(3, 3));
        let s = Matrix::new(2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!s.is_invertible());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(3, 2, vec![vec![1, 1, 0], vec![0, 1, 0]]).unwrap();
        let b = Subspace::span(3, 2, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(a.elements().len(), 4);
        assert!(a.contains(&[1, 1, 0]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    #[test]
    fn orthogonal_complement() {
        let h = Subspace::orthogonal(3, 3, &[1, 2, 0]).unwrap();
        assert_eq!(h.dim(), 2);
        for v in h.elements() {
            assert_eq!(dot(3, &v, &[1, 2, 0]), 0);
        }
        assert!(matches!(Subspace::orthogonal(3, 3, &[0, 0, 0]), Err(AffineError::ZeroVector)));
    }
}
