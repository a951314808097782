use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{BipartiteGraph, GraphError};

/// `(b_0, ..., b_{d-1}; c_1, ..., c_d)` from one vertex class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> Self {
        assert_eq!(b.len(), c.len(), "b and c must have the same length");
        IntersectionArray { b, c }
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// `b_i`, zero outside `0..d`.
    pub fn b_at(&self, i: usize) -> usize {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i`, zero outside `1..=d`.
    pub fn c_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.c.get(i - 1).copied().unwrap_or(0)
        }
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}; {})", join(&self.b), join(&self.c))
    }
}

/// `iota` is read from a `B`-vertex, `iota_prime` from a `B'`-vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrayPair {
    pub iota: IntersectionArray,
    pub iota_prime: IntersectionArray,
}

/// Where distance-biregularity broke down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiregularityWitness {
    pub source: usize,
    pub reference: usize,
    pub level: usize,
    pub vertex: Option<usize>,
    pub quantity: &'static str,
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayMode {
    Exhaustive,
    /// Check `per_side` randomly chosen sources in each bipart.
    Sampled { seed: u64, per_side: usize },
}

impl ArrayMode {
    pub const EXHAUSTIVE_LIMIT: usize = 500;

    pub fn auto(order: usize, seed: u64) -> Self {
        if order <= Self::EXHAUSTIVE_LIMIT {
            ArrayMode::Exhaustive
        } else {
            ArrayMode::Sampled { seed, per_side: 64 }
        }
    }
}

pub fn intersection_arrays(g: &BipartiteGraph) -> Result<ArrayPair, GraphError> {
    intersection_arrays_with(g, ArrayMode::auto(g.order(), 0))
}

pub fn intersection_arrays_with(g: &BipartiteGraph, mode: ArrayMode) -> Result<ArrayPair, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.n_b() == 0 || g.n_bp() == 0 {
        return Err(GraphError::EmptyBipart);
    }
    let mut rng = match mode {
        ArrayMode::Sampled { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        ArrayMode::Exhaustive => None,
    };
    let mut side = |vertices: Vec<usize>| -> Result<IntersectionArray, GraphError> {
        let sources = match (&mut rng, mode) {
            (Some(rng), ArrayMode::Sampled { per_side, .. }) if vertices.len() > per_side => {
                let mut chosen: Vec<usize> = vertices[1..]
                    .choose_multiple(rng, per_side - 1)
                    .copied()
                    .collect();
                chosen.insert(0, vertices[0]);
                chosen
            }
            _ => vertices,
        };
        let reference = sources[0];
        let array = array_from(g, reference).map_err(boxed)?;
        for &x in &sources[1..] {
            let other = array_from(g, x).map_err(boxed)?;
            if let Some(w) = first_difference(&array, &other, reference, x) {
                return Err(boxed(w));
            }
        }
        Ok(array)
    };
    let iota = side(g.b_vertices())?;
    let iota_prime = side(g.bp_vertices())?;
    Ok(ArrayPair { iota, iota_prime })
}

fn boxed(w: BiregularityWitness) -> GraphError {
    GraphError::NotDistanceBiregular(Box::new(w))
}

/// Reads the array from `x`, checking that every vertex of each sphere agrees.
fn array_from(g: &BipartiteGraph, x: usize) -> Result<IntersectionArray, BiregularityWitness> {
    let levels = g.distance_partition(x).levels;
    let d = levels.len() - 1;
    let mut b = Vec::with_capacity(d);
    let mut c = Vec::with_capacity(d);
    for (i, level) in levels.iter().enumerate() {
        let mut first: Option<[usize; 3]> = None;
        for &y in level {
            let mut counts = [0usize; 3];
            for &z in g.neighbors(y) {
                let dz = g.distance(x, z).expect("connected");
                counts[dz + 1 - i] += 1;
            }
            let witness = |quantity, expected, found| BiregularityWitness {
                source: x,
                reference: x,
                level: i,
                vertex: Some(y),
                quantity,
                expected,
                found,
            };
            if counts[1] != 0 {
                return Err(witness("a", 0, counts[1]));
            }
            match first {
                None => first = Some(counts),
                Some(f) => {
                    if f[0] != counts[0] {
                        return Err(witness("c", f[0], counts[0]));
                    }
                    if f[2] != counts[2] {
                        return Err(witness("b", f[2], counts[2]));
                    }
                }
            }
        }
        let [ci, _, bi] = first.expect("levels are nonempty");
        if i < d {
            b.push(bi);
        }
        if i > 0 {
            c.push(ci);
        }
    }
    Ok(IntersectionArray::new(b, c))
}

fn first_difference(
    a: &IntersectionArray,
    other: &IntersectionArray,
    reference: usize,
    source: usize,
) -> Option<BiregularityWitness> {
    let w = |level, quantity, expected, found| BiregularityWitness {
        source,
        reference,
        level,
        vertex: None,
        quantity,
        expected,
        found,
    };
    if a.diameter() != other.diameter() {
        return Some(w(0, "eccentricity", a.diameter(), other.diameter()));
    }
    for i in 0..a.diameter() {
        if a.b[i] != other.b[i] {
            return Some(w(i, "b", a.b[i], other.b[i]));
        }
        if a.c[i] != other.c[i] {
            return Some(w(i + 1, "c", a.c[i], other.c[i]));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Diam3,
    Diam4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
}

/// Arrays forced by the parameters `(k, l, r)`, with the integrality report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedArrays {
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub branch: Branch,
    /// From a block-vertex; `None` when some entry is not an integer.
    pub iota_prime: Option<IntersectionArray>,
    /// From a point-vertex.
    pub iota: Option<IntersectionArray>,
    pub conditions: Vec<Condition>,
    pub feasible: bool,
}

pub fn predicted_arrays(k: usize, l: usize, r: usize) -> Result<PredictedArrays, GraphError> {
    if k < 2 || l < 2 || r < 3 {
        return Err(GraphError::InvalidParameters(format!(
            "need k >= 2, l >= 2, r >= 3; got ({k}, {l}, {r})"
        )));
    }
    let (ki, li, ri) = (k as i64, l as i64, r as i64);
    let divides = |a: i64, b: i64| a != 0 && b % a == 0;
    let exact = |num: i64, den: i64| divides(den, num).then(|| num / den);

    let disc = ki * li - li * ri + ri - 1;
    let branch = if disc == 0 { Branch::Diam3 } else { Branch::Diam4 };
    let big_d = ri * (ki - li) + ki * (li - 1);

    let mut conditions = vec![
        Condition {
            name: "l | k",
            holds: divides(li, ki),
        },
        Condition {
            name: "l(k-1) | k(r-1)(l-1)",
            holds: divides(li * (ki - 1), ki * (ri - 1) * (li - 1)),
        },
        Condition {
            name: "r(k-l)+k(l-1) | k(k-1)(r-1)",
            holds: divides(big_d, ki * (ki - 1) * (ri - 1)),
        },
    ];
    if branch == Branch::Diam3 {
        conditions.push(Condition {
            name: "(l-1) | (k-1)",
            holds: divides(li - 1, ki - 1),
        });
        conditions.push(Condition {
            name: "r = (kl-1)/(l-1)",
            holds: exact(ki * li - 1, li - 1) == Some(ri),
        });
    }

    let iota_prime = exact(ki * (li - 1), li)
        .zip(exact(ki, li))
        .map(|(b2, c2)| array(&[ki, ri - 1, b2, 1], &[1, c2, ri - 1, ki]));
    let iota = match branch {
        Branch::Diam3 => Some(array(&[ri, ki - 1, ki], &[1, ri - ki, ki])),
        Branch::Diam4 => {
            let b2 = exact((ri - 1) * ki * (li - 1), li * (ki - 1));
            let c2 = exact(big_d, li * (ki - 1));
            let c3 = exact(ki * (ki - 1) * (ri - 1), big_d);
            match (b2, c2, c3) {
                (Some(b2), Some(c2), Some(c3)) => {
                    Some(array(&[ri, ki - 1, b2, ki - c3], &[1, c2, c3, ri]))
                }
                _ => None,
            }
        }
    };
    let positive = |a: &Option<Vec<i64>>| a.as_ref().is_some_and(|v| v.iter().all(|&x| x > 0));
    conditions.push(Condition {
        name: "entries positive",
        holds: positive(&iota_prime) && positive(&iota),
    });
    let feasible = conditions.iter().all(|c| c.holds);
    let to_array = |v: Option<Vec<i64>>| {
        v.filter(|v| v.iter().all(|&x| x >= 0)).map(|v| {
            let h = v.len() / 2;
            IntersectionArray::new(
                v[..h].iter().map(|&x| x as usize).collect(),
                v[h..].iter().map(|&x| x as usize).collect(),
            )
        })
    };
    Ok(PredictedArrays {
        k,
        l,
        r,
        branch,
        iota_prime: to_array(iota_prime),
        iota: to_array(iota),
        conditions,
        feasible,
    })
}

fn array(b: &[i64], c: &[i64]) -> Vec<i64> {
    b.iter().chain(c).copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityCheck {
    /// `"c"` for `c_i c_{i+1}` at even `i`, `"b"` for `b_i b_{i+1}` at odd `i`.
    pub kind: &'static str,
    pub i: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// Product identities linking the two arrays; entries outside an array count as 0.
pub fn parity_identities(iota: &IntersectionArray, iota_prime: &IntersectionArray) -> Vec<ParityCheck> {
    let top = iota.diameter().max(iota_prime.diameter());
    (0..=top)
        .map(|i| {
            let (kind, lhs, rhs) = if i % 2 == 0 {
                (
                    "c",
                    iota.c_at(i) * iota.c_at(i + 1),
                    iota_prime.c_at(i) * iota_prime.c_at(i + 1),
                )
            } else {
                (
                    "b",
                    iota.b_at(i) * iota.b_at(i + 1),
                    iota_prime.b_at(i) * iota_prime.b_at(i + 1),
                )
            };
            ParityCheck {
                kind,
                i,
                lhs,
                rhs,
                holds: lhs == rhs,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ia(b: &[usize], c: &[usize]) -> IntersectionArray {
        IntersectionArray::new(b.to_vec(), c.to_vec())
    }

    #[test]
    fn eight_cycle() {
        let c8 = BipartiteGraph::even_cycle(4).unwrap();
        let arrays = intersection_arrays(&c8).unwrap();
        assert_eq!(arrays.iota, ia(&[2, 1, 1, 1], &[1, 1, 1, 2]));
        assert_eq!(arrays.iota_prime, arrays.iota);
        assert_eq!(arrays.iota.to_string(), "(2,1,1,1; 1,1,1,2)");
    }

    #[test]
    fn affine_parameters_diam3() {
        let p = predicted_arrays(4, 2, 7).unwrap();
        assert_eq!(p.branch, Branch::Diam3);
        assert!(p.feasible);
        assert_eq!(p.iota, Some(ia(&[7, 3, 4], &[1, 3, 4])));
        assert_eq!(p.iota_prime, Some(ia(&[4, 6, 2, 1], &[1, 2, 6, 4])));
    }

    #[test]
    fn selfdual_parameters_diam4() {
        let p = predicted_arrays(4, 2, 4).unwrap();
        assert_eq!(p.branch, Branch::Diam4);
        assert!(p.feasible);
        assert_eq!(p.iota, Some(ia(&[4, 3, 2, 1], &[1, 2, 3, 4])));
        assert_eq!(p.iota_prime, p.iota);
    }

    #[test]
    fn l_not_dividing_k_is_infeasible() {
        let p = predicted_arrays(4, 3, 5).unwrap();
        assert!(!p.feasible);
        assert!(!p.conditions[0].holds);
        assert_eq!(p.iota_prime, None);
    }

    #[test]
    fn scan_row() {
        let p = predicted_arrays(6, 2, 11).unwrap();
        assert_eq!(p.branch, Branch::Diam3);
        assert!(p.feasible);
        assert_eq!(p.iota, Some(ia(&[11, 5, 6], &[1, 5, 6])));
    }

    #[test]
    fn b3_matches_statement_formula() {
        // b3 = k(kl - lr + r - 1) / (r(k-l) + k(l-1)) wherever everything is integral
        for k in 2..30i64 {
            for l in 2..6i64 {
                for r in 3..40i64 {
                    let p = predicted_arrays(k as usize, l as usize, r as usize).unwrap();
                    if let (Branch::Diam4, Some(iota)) = (p.branch, &p.iota) {
                        let d = r * (k - l) + k * (l - 1);
                        let num = k * (k * l - l * r + r - 1);
                        assert_eq!(num % d, 0);
                        assert_eq!(iota.b[3] as i64, num / d);
                    }
                }
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(predicted_arrays(1, 2, 3).is_err());
        assert!(predicted_arrays(4, 2, 2).is_err());
    }

    #[test]
    fn parity_on_affine_arrays() {
        let iota = ia(&[7, 3, 4], &[1, 3, 4]);
        let iota_prime = ia(&[4, 6, 2, 1], &[1, 2, 6, 4]);
        let checks = parity_identities(&iota, &iota_prime);
        assert!(checks.iter().all(|c| c.holds));
        assert_eq!(checks[2].lhs, 12);
        assert_eq!(checks[1].lhs, 12);
    }

    #[test]
    fn path_is_not_distance_biregular() {
        // path 0 - 2 - 1 - 3: the two end vertices see different arrays from the middle ones
        let g = BipartiteGraph::new(2, 2, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(
            intersection_arrays(&g),
            Err(GraphError::NotDistanceBiregular(_))
        ));
    }
}
