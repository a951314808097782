use std::collections::HashSet;

use serde::Serialize;

use super::construction::{construction_check, ConstructionInput, ConstructionReport};
use super::linalg::{Matrix, Subspace};
use super::AffineError;
use crate::incidence::{is_nicely_affine, is_pairwise_transitive, Design};
use crate::permgroup::{PermGroup, Permutation, ENUMERATION_CAP};

#[derive(Debug, Clone, Serialize)]
pub struct RegularReport {
    pub regular: bool,
    /// Order of `N` acting on points.
    pub n_order: u128,
    /// `|N_x|` for a point `x`.
    pub stabilizer_order: u128,
    /// Point sets of the blocks through point 0, one per class.
    pub subgroups: Vec<Vec<usize>>,
    pub subgroups_closed: bool,
    pub p: Option<u32>,
    pub exponent_p: bool,
    /// `|N| <= |M_1|^2`.
    pub order_bound: bool,
    pub abelian: bool,
    pub elementary_abelian: bool,
    pub d: Option<usize>,
    /// `subgroups[i]` as subspaces of `GF(p)^d` under the recovered identification.
    pub subspaces: Vec<Subspace>,
    pub g0_linear: bool,
    pub reconstruction: Option<ConstructionInput>,
    pub reconstruction_check: Option<ConstructionReport>,
    /// The reconstructed subspace orbit equals `subspaces` as a set.
    pub orbit_matches: bool,
}

impl RegularReport {
    fn non_regular(n_order: u128, stabilizer_order: u128) -> Self {
        RegularReport {
            regular: false,
            n_order,
            stabilizer_order,
            subgroups: Vec::new(),
            subgroups_closed: false,
            p: None,
            exponent_p: false,
            order_bound: false,
            abelian: false,
            elementary_abelian: false,
            d: None,
            subspaces: Vec::new(),
            g0_linear: false,
            reconstruction: None,
            reconstruction_check: None,
            orbit_matches: false,
        }
    }

    pub fn round_trip_ok(&self) -> bool {
        self.regular
            && self.elementary_abelian
            && self.orbit_matches
            && self.reconstruction_check.as_ref().is_some_and(|r| r.conditions.all())
    }
}

fn smallest_prime_factor(n: u128) -> u128 {
    (2..).find(|k| n.is_multiple_of(*k) || k * k > n).map_or(n, |k| if n.is_multiple_of(k) { k } else { n })
}

/// Identifies points with elements of a regular `N` and recovers the vector space structure.
pub fn regular_analysis(design: &Design, g: &PermGroup, n: &PermGroup) -> Result<RegularReport, AffineError> {
    if !is_pairwise_transitive(design, g)?.overall {
        return Err(AffineError::Precondition("design is not pairwise transitive".into()));
    }
    let nice = is_nicely_affine(design, n)
        .map_err(|e| AffineError::Precondition(format!("design is not nicely affine: {e:?}")))?;
    if nice.classes.len() < 3 {
        return Err(AffineError::Precondition(format!(
            "need r >= 3 parallel classes, found {}",
            nice.classes.len()
        )));
    }
    if !n.is_normal_in(g)? {
        return Err(AffineError::Precondition("N is not normal in G".into()));
    }

    let v = design.v();
    let points: Vec<usize> = (0..v).collect();
    let n_pts = n.restrict(&points)?;
    let n_order = n_pts.order();
    let stabilizer_order = n_pts.point_stabilizer(0)?.order();
    if stabilizer_order != 1 || !n_pts.is_transitive(&points)? {
        return Ok(RegularReport::non_regular(n_order, stabilizer_order));
    }

    // elem[y] is the unique element sending 0 to y; the product y*z is 0^(elem[y] elem[z])
    let elements = n_pts
        .enumerate(ENUMERATION_CAP)
        .ok_or_else(|| AffineError::InvalidParameters("N too large to enumerate".into()))?;
    let mut elem: Vec<Option<Permutation>> = vec![None; v];
    for e in elements {
        let y = e.apply(0);
        elem[y] = Some(e);
    }
    let elem: Vec<Permutation> = elem.into_iter().map(|e| e.expect("regular")).collect();
    let prod = |y: usize, z: usize| elem[z].apply(y);

    let subgroups: Vec<Vec<usize>> = nice
        .classes
        .iter()
        .map(|class| {
            let b = class
                .iter()
                .copied()
                .find(|&b| design.is_incident(0, b))
                .expect("each parallel class covers point 0");
            design.block(b).to_vec()
        })
        .collect();
    let subgroups_closed = subgroups.iter().all(|m| {
        let set: HashSet<usize> = m.iter().copied().collect();
        m.iter().all(|&a| m.iter().all(|&b| set.contains(&prod(a, b))))
    });

    let p = smallest_prime_factor(n_order);
    let exponent_p = (1..v).all(|y| elem[y].order() as u128 == p);
    let m1 = subgroups[0].len() as u128;
    let order_bound = n_order <= m1 * m1;
    let abelian = (0..v).all(|y| (0..v).all(|z| prod(y, z) == prod(z, y)));
    let elementary_abelian = abelian && exponent_p;

    let mut report = RegularReport {
        regular: true,
        n_order,
        stabilizer_order,
        subgroups,
        subgroups_closed,
        p: Some(p as u32),
        exponent_p,
        order_bound,
        abelian,
        elementary_abelian,
        d: None,
        subspaces: Vec::new(),
        g0_linear: false,
        reconstruction: None,
        reconstruction_check: None,
        orbit_matches: false,
    };
    if !elementary_abelian || !subgroups_closed {
        return Ok(report);
    }
    let p32 = p as u32;

    // greedy basis by least point, reversed so that lexicographic indexing is reproduced
    let mut span: Vec<usize> = vec![0];
    let mut in_span = vec![false; v];
    in_span[0] = true;
    let mut basis = Vec::new();
    while span.len() < v {
        let b = (0..v).find(|&y| !in_span[y]).expect("span is proper");
        basis.push(b);
        let mut next = Vec::with_capacity(span.len() * p as usize);
        for &s in &span {
            let mut x = s;
            for _ in 0..p {
                next.push(x);
                x = prod(x, b);
            }
        }
        for &x in &next {
            in_span[x] = true;
        }
        span = next;
    }
    basis.reverse();
    let d = basis.len();

    // coords[y] with y = sum coords[y]_i basis_i
    let mut coords = vec![Vec::new(); v];
    let mut stack = vec![(0usize, vec![0u32; d])];
    let mut seen = vec![false; v];
    seen[0] = true;
    while let Some((y, c)) = stack.pop() {
        for (i, &b) in basis.iter().enumerate() {
            let z = prod(y, b);
            if !seen[z] {
                seen[z] = true;
                let mut cz = c.clone();
                cz[i] = (cz[i] + 1) % p32;
                stack.push((z, cz));
            }
        }
        coords[y] = c;
    }

    let subspaces: Vec<Subspace> = report
        .subgroups
        .iter()
        .map(|m| Subspace::span(d, p32, m.iter().map(|&y| coords[y].clone()).collect()))
        .collect::<Result<_, _>>()?;

    // G_0 = stabiliser of point 0, read as matrices on the recovered coordinates
    let g0 = g.restrict(&points)?.point_stabilizer(0)?;
    let mut matrices = Vec::new();
    let mut g0_linear = true;
    for gen in g0.generators() {
        let rows: Vec<Vec<u32>> = basis.iter().map(|&b| coords[gen.apply(b)].clone()).collect();
        let m = Matrix::new(p32, rows)?;
        g0_linear &= (0..v).all(|y| m.apply(&coords[y]) == coords[gen.apply(y)]);
        matrices.push(m);
    }

    report.d = Some(d);
    report.subspaces = subspaces;
    report.g0_linear = g0_linear;
    if !g0_linear {
        return Ok(report);
    }
    let input = ConstructionInput {
        d,
        p: p32,
        g0_generators: matrices.iter().map(|m| m.rows.clone()).collect(),
        m1_basis: report.subspaces[0].basis.clone(),
    };
    let check = construction_check(d, p32, &matrices, &report.subspaces[0])?;
    let found: HashSet<&Subspace> = check.orbit.iter().collect();
    let expected: HashSet<&Subspace> = report.subspaces.iter().collect();
    report.orbit_matches = found == expected;
    report.reconstruction = Some(input);
    report.reconstruction_check = Some(check);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{affine_space_design, selfdual_design};

    #[test]
    fn affine_space_round_trip() {
        let inst = affine_space_design(3, 2).unwrap();
        let rep = regular_analysis(&inst.design, &inst.g, &inst.n).unwrap();
        assert!(rep.regular && rep.elementary_abelian && rep.subgroups_closed);
        assert_eq!(rep.subgroups.len(), 7);
        assert!(rep.subgroups.iter().all(|m| m.len() == 4));
        assert!(rep.round_trip_ok());
        let mut got = rep.reconstruction_check.unwrap().orbit;
        let mut want = inst.orbit.clone();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn selfdual_round_trip() {
        let sd = selfdual_design(3, 2, &[1, 0, 0]).unwrap();
        let inst = &sd.instance;
        let rep = regular_analysis(&inst.design, &inst.g, &inst.n).unwrap();
        assert_eq!(rep.subgroups.len(), 4);
        assert!(rep.round_trip_ok());
    }

    #[test]
    fn full_group_as_n_is_rejected() {
        let inst = affine_space_design(3, 2).unwrap();
        let err = regular_analysis(&inst.design, &inst.g, &inst.g).unwrap_err();
        assert!(matches!(err, AffineError::Precondition(ref m) if m.contains("nicely affine")));
    }

    #[test]
    fn prime_factor() {
        assert_eq!(smallest_prime_factor(27), 3);
        assert_eq!(smallest_prime_factor(16), 2);
        assert_eq!(smallest_prime_factor(7), 7);
    }
}
