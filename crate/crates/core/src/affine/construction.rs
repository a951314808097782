use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::action::{cosets, gl_generators, translation_generators, AffineElement};
use super::linalg::{check_prime, Matrix, Subspace, VectorSpace};
use super::{point_action, AffineError};
use crate::incidence::Design;
use crate::permgroup::{PermGroup, Permutation};

/// On-disk form of a construction input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionInput {
    pub d: usize,
    pub p: u32,
    #[serde(rename = "G0_generators")]
    pub g0_generators: Vec<Vec<Vec<u32>>>,
    #[serde(rename = "M1_basis")]
    pub m1_basis: Vec<Vec<u32>>,
}

impl ConstructionInput {
    pub fn matrices(&self) -> Result<Vec<Matrix>, AffineError> {
        self.g0_generators
            .iter()
            .map(|rows| Matrix::new(self.p, rows.clone()))
            .collect()
    }

    pub fn m1(&self) -> Result<Subspace, AffineError> {
        Subspace::span(self.d, self.p, self.m1_basis.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `G = N.G_0` has rank 2 or 3 on `V`.
    pub a: bool,
    /// The orbit has at least 3 members and `G_0` is 2-transitive on it.
    pub b: bool,
    /// `V = M_i + M_j` for distinct members.
    pub c: bool,
    /// `(G_0)_{M_1}` is transitive on the nontrivial cosets of `M_1`.
    pub d: bool,
    /// The nonzero vectors of the `M_i` form one `G_0`-orbit.
    pub e: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d && self.e
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub d: usize,
    pub p: u32,
    pub r: usize,
    pub orbit: Vec<Subspace>,
    pub rank_on_points: Option<usize>,
    /// `∪ M_i = V`.
    pub union_is_space: bool,
    pub conditions: Conditions,
}

fn check_generators(d: usize, p: u32, gens: &[Matrix]) -> Result<(), AffineError> {
    for (i, g) in gens.iter().enumerate() {
        if g.p != p || g.dim() != d || !g.is_square() {
            return Err(AffineError::DimensionMismatch);
        }
        if !g.is_invertible() {
            return Err(AffineError::Singular(i));
        }
    }
    Ok(())
}

/// Orbit of a subspace under `v -> vA`, in discovery order starting with `m1`.
pub fn subspace_orbit(m1: &Subspace, gens: &[Matrix]) -> Vec<Subspace> {
    let mut orbit = vec![m1.clone()];
    let mut seen: HashSet<Subspace> = orbit.iter().cloned().collect();
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let image = orbit[i].image(g);
            if seen.insert(image.clone()) {
                orbit.push(image);
            }
        }
        i += 1;
    }
    orbit
}

/// Permutation action of each generator on an orbit of subspaces.
fn orbit_action(orbit: &[Subspace], gens: &[Matrix]) -> Vec<Permutation> {
    let index: HashMap<&Subspace, usize> = orbit.iter().enumerate().map(|(i, m)| (m, i)).collect();
    gens.iter()
        .map(|g| {
            let images = orbit.iter().map(|m| index[&m.image(g)]).collect();
            Permutation::from_images(images).expect("generators permute their orbit")
        })
        .collect()
}

fn linear_elements(gens: &[Matrix]) -> Vec<AffineElement> {
    gens.iter()
        .map(|m| AffineElement::linear(m.clone()).expect("checked invertible"))
        .collect()
}

/// `G = N.G_0` on the `p^d` points.
pub fn affine_group(d: usize, p: u32, g0_gens: &[Matrix]) -> Result<PermGroup, AffineError> {
    let mut elements = translation_generators(d, p);
    elements.extend(linear_elements(g0_gens));
    point_action(&elements, d, p)
}

pub fn construction_check(
    d: usize,
    p: u32,
    g0_gens: &[Matrix],
    m1: &Subspace,
) -> Result<ConstructionReport, AffineError> {
    check_prime(p)?;
    if m1.d != d || m1.p != p {
        return Err(AffineError::DimensionMismatch);
    }
    check_generators(d, p, g0_gens)?;
    let space = VectorSpace::new(d, p)?;
    let orbit = subspace_orbit(m1, g0_gens);
    let r = orbit.len();

    let g = affine_group(d, p, g0_gens)?;
    let all_points: Vec<usize> = (0..space.size()).collect();
    let rank_on_points = g.rank(&all_points).ok();
    let a = matches!(rank_on_points, Some(2) | Some(3));

    // (b): 2-transitivity on the orbit, via transitivity on ordered pairs
    let on_orbit = PermGroup::new(r, orbit_action(&orbit, g0_gens))?;
    let pairs: Vec<Vec<usize>> = (0..r)
        .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| vec![i, j]))
        .collect();
    let b = r >= 3 && on_orbit.is_transitive_on(&pairs)?;

    let c = r >= 2
        && (0..r).all(|i| (i + 1..r).all(|j| orbit[i].sum(&orbit[j]).dim() == d));

    // (d): stabiliser of M_1 read off the combined action on V ⊔ orbit
    let combined: Vec<Permutation> = g0_gens
        .iter()
        .zip(orbit_action(&orbit, g0_gens))
        .map(|(m, on_orbit)| {
            let mut images = AffineElement::linear(m.clone())
                .expect("checked invertible")
                .permutation(&space)
                .to_vec();
            images.extend(on_orbit.images().map(|x| space.size() + x));
            Permutation::from_images(images).expect("disjoint union of bijections")
        })
        .collect();
    let combined = PermGroup::new(space.size() + r, combined)?;
    let stab = combined.point_stabilizer(space.size())?.restrict(&all_points)?;
    let m1_cosets = cosets(m1, &space);
    let nontrivial: Vec<Vec<usize>> = m1_cosets.iter().filter(|c| c[0] != 0).cloned().collect();
    let d_holds = if nontrivial.is_empty() {
        false
    } else {
        let action = stab.induced_action(&m1_cosets)?;
        let zero_coset = m1_cosets.iter().position(|c| c[0] == 0).expect("M_1 contains 0");
        let start = (0..m1_cosets.len()).find(|&i| i != zero_coset).expect("nontrivial coset");
        action.group.orbit(start)?.len() == nontrivial.len()
    };

    // (e)
    let mut union: Vec<usize> = orbit
        .iter()
        .flat_map(|m| m.element_indices(&space))
        .filter(|&x| x != 0)
        .collect();
    union.sort_unstable();
    union.dedup();
    let g0 = point_action(&linear_elements(g0_gens), d, p)?;
    let e = !union.is_empty() && g0.orbit(union[0])? == union;
    let union_is_space = union.len() + 1 == space.size();

    Ok(ConstructionReport {
        d,
        p,
        r,
        orbit,
        rank_on_points,
        union_is_space,
        conditions: Conditions {
            a,
            b,
            c,
            d: d_holds,
            e,
        },
    })
}

/// A design on `GF(p)^d` with its groups, both acting on points⊔blocks.
#[derive(Debug, Clone)]
pub struct AffineInstance {
    pub d: usize,
    pub p: u32,
    pub design: Design,
    pub g: PermGroup,
    pub n: PermGroup,
    pub g0_generators: Vec<Matrix>,
    pub orbit: Vec<Subspace>,
}

impl AffineInstance {
    pub fn space(&self) -> VectorSpace {
        VectorSpace::new(self.d, self.p).expect("validated at construction")
    }

    pub fn construction_input(&self) -> ConstructionInput {
        ConstructionInput {
            d: self.d,
            p: self.p,
            g0_generators: self.g0_generators.iter().map(|m| m.rows.clone()).collect(),
            m1_basis: self.orbit[0].basis.clone(),
        }
    }
}

/// Points `GF(p)^d`, blocks every coset of every subspace in `orbit`.
pub fn build_design(
    d: usize,
    p: u32,
    g0_gens: &[Matrix],
    orbit: &[Subspace],
) -> Result<AffineInstance, AffineError> {
    let space = VectorSpace::new(d, p)?;
    check_generators(d, p, g0_gens)?;
    if orbit.is_empty() {
        return Err(AffineError::InvalidParameters("empty subspace orbit".into()));
    }
    for m in orbit {
        if m.d != d || m.p != p {
            return Err(AffineError::DimensionMismatch);
        }
        if m.dim() == 0 || m.dim() == d {
            return Err(AffineError::InvalidParameters(
                "subspaces must be proper and nontrivial".into(),
            ));
        }
    }
    let blocks: Vec<Vec<usize>> = orbit.iter().flat_map(|m| cosets(m, &space)).collect();
    let design = Design::new(space.size(), blocks)?;
    let g_points = affine_group(d, p, g0_gens)?;
    let n_points = point_action(&translation_generators(d, p), d, p)?;
    let g = design.lift_point_group(g_points.generators())?;
    let n = design.lift_point_group(n_points.generators())?;
    Ok(AffineInstance {
        d,
        p,
        design,
        g,
        n,
        g0_generators: g0_gens.to_vec(),
        orbit: orbit.to_vec(),
    })
}

/// Points and hyperplanes of `AG(d, p)` with `AGL(d, p)` and its translations.
pub fn affine_space_design(d: usize, p: u32) -> Result<AffineInstance, AffineError> {
    if d < 3 {
        return Err(AffineError::InvalidParameters("affine space design needs d >= 3".into()));
    }
    check_prime(p)?;
    let gens = gl_generators(d, p);
    let mut e_d = vec![0; d];
    e_d[d - 1] = 1;
    let hyperplane = Subspace::orthogonal(d, p, &e_d)?;
    let orbit = subspace_orbit(&hyperplane, &gens);
    build_design(d, p, &gens, &orbit)
}
