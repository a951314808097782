use super::action::{basis_with_first_row, line_stabilizer_generators};
use super::construction::{build_design, subspace_orbit, AffineInstance};
use super::linalg::{check_prime, dot, Subspace, VectorSpace};
use super::AffineError;
use crate::graphs::incidence_graph;
use crate::permgroup::Permutation;

/// The maps `φ: P -> B` and `θ: B -> P` and the graph permutation they combine into.
#[derive(Debug, Clone)]
pub struct Duality {
    /// `phi[x]` is a block index.
    pub phi: Vec<usize>,
    /// `theta[i]` is a point.
    pub theta: Vec<usize>,
    /// On points⊔blocks: `φ` on points, `θ` on blocks.
    pub alpha: Permutation,
}

#[derive(Debug, Clone)]
pub struct SelfDualInstance {
    pub u: Vec<u32>,
    pub instance: AffineInstance,
    pub duality: Duality,
}

impl Duality {
    pub fn theta_inverts_phi(&self) -> bool {
        self.phi.iter().enumerate().all(|(x, &b)| self.theta[b] == x)
            && self.theta.iter().enumerate().all(|(b, &x)| self.phi[x] == b)
    }
}

impl SelfDualInstance {
    /// Number of incident pairs `(v, H)` with `H^θ ∈ v^φ`, alongside the total number of incident pairs.
    pub fn incidence_spot_check(&self) -> (usize, usize) {
        let design = &self.instance.design;
        let mut ok = 0;
        let mut total = 0;
        for (h, block) in design.blocks().iter().enumerate() {
            for &x in block {
                total += 1;
                if design.is_incident(self.duality.theta[h], self.duality.phi[x]) {
                    ok += 1;
                }
            }
        }
        (ok, total)
    }

    /// `α` preserves adjacency of the incidence graph and swaps the two biparts.
    pub fn alpha_is_bipart_swapping_automorphism(&self) -> bool {
        let design = &self.instance.design;
        let graph = incidence_graph(design);
        let alpha = &self.duality.alpha;
        let swaps = (0..graph.order()).all(|x| graph.in_b(x) != graph.in_b(alpha.apply(x)));
        swaps
            && graph
                .edges()
                .iter()
                .all(|&(a, b)| graph.is_adjacent(alpha.apply(a), alpha.apply(b)))
    }
}

/// Points `GF(p)^d`, blocks the cosets of the hyperplanes not containing `u`,
/// with `G = N.G_0` for `G_0` the stabiliser of `<u>`.
pub fn selfdual_design(d: usize, p: u32, u: &[u32]) -> Result<SelfDualInstance, AffineError> {
    check_prime(p)?;
    if d < 3 {
        return Err(AffineError::InvalidParameters("self-dual design needs d >= 3".into()));
    }
    if u.len() != d {
        return Err(AffineError::DimensionMismatch);
    }
    let u: Vec<u32> = u.iter().map(|x| x % p).collect();
    if u.iter().all(|&x| x == 0) {
        return Err(AffineError::ZeroVector);
    }
    let space = VectorSpace::new(d, p)?;
    // q sends e_1 to u; the formulas below are written for u = e_1
    let q = basis_with_first_row(&u, p)?;
    let q_inv = q.inverse().expect("basis matrix is invertible");

    let gens = line_stabilizer_generators(&u, p)?;
    let m1 = Subspace::span(d, p, q.rows[1..].to_vec())?;
    let orbit = subspace_orbit(&m1, &gens);
    let instance = build_design(d, p, &gens, &orbit)?;
    let design = &instance.design;
    let index = design.block_index();

    // B(n, c) = {y : y·n = c} in e_1 coordinates, returned as a block index
    let block_of = |n: &[u32], c: u32| -> usize {
        let mut pts: Vec<usize> = (0..space.size())
            .filter(|&z| dot(p, &q_inv.apply(&space.coords(z)), n) == c)
            .collect();
        pts.sort_unstable();
        index[pts.as_slice()]
    };

    let neg = |x: u32| (p - x % p) % p;

    // φ(a e_1 + v_0) = -a e_1 + <e_1 + v_0>^⊥ = B((1, x_2..x_d), -x_1)
    let phi: Vec<usize> = (0..space.size())
        .map(|z| {
            let x = q_inv.apply(&space.coords(z));
            let mut n = x.clone();
            n[0] = 1;
            block_of(&n, neg(x[0]))
        })
        .collect();

    // θ(B(n, c)) = (-c, n_2..n_d) with n normalised to n_1 = 1
    let normals: Vec<Vec<u32>> = (0..space.size())
        .map(|i| space.coords(i))
        .filter(|n| n[0] == 1)
        .collect();
    let mut theta = Vec::with_capacity(design.b());
    for block in design.blocks() {
        let pts: Vec<Vec<u32>> = block.iter().map(|&z| q_inv.apply(&space.coords(z))).collect();
        let (n, c) = normals
            .iter()
            .find_map(|n| {
                let c = dot(p, &pts[0], n);
                pts.iter().all(|y| dot(p, y, n) == c).then_some((n, c))
            })
            .ok_or_else(|| AffineError::Precondition("block is not a coset of a hyperplane avoiding u".into()))?;
        let mut x = n.clone();
        x[0] = neg(c);
        theta.push(space.index(&q.apply(&x)));
    }

    let v = design.v();
    let images: Vec<usize> = phi
        .iter()
        .map(|&b| v + b)
        .chain(theta.iter().copied())
        .collect();
    let alpha = Permutation::from_images(images)
        .map_err(|_| AffineError::Precondition("φ and θ are not bijections".into()))?;

    Ok(SelfDualInstance {
        u,
        instance,
        duality: Duality { phi, theta, alpha },
    })
}
