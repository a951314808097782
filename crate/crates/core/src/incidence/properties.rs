use serde::Serialize;

use super::{Design, DesignError};
use crate::permgroup::PermGroup;

/// The six families of ordered pairs of distinct objects of a design.
///
/// Block entries are block indices (not points⊔blocks vertices).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairClasses {
    pub incident_pb: Vec<(usize, usize)>,
    pub nonincident_pb: Vec<(usize, usize)>,
    pub collinear_pp: Vec<(usize, usize)>,
    pub noncollinear_pp: Vec<(usize, usize)>,
    pub intersecting_bb: Vec<(usize, usize)>,
    pub nonintersecting_bb: Vec<(usize, usize)>,
}

pub fn pair_classes(d: &Design) -> PairClasses {
    let mut pc = PairClasses::default();
    for x in 0..d.v() {
        for b in 0..d.b() {
            if d.is_incident(x, b) {
                pc.incident_pb.push((x, b));
            } else {
                pc.nonincident_pb.push((x, b));
            }
        }
    }
    let v = d.v();
    let mut collinear = vec![false; v * v];
    for block in d.blocks() {
        for &x in block {
            for &y in block {
                collinear[x * v + y] = true;
            }
        }
    }
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            if collinear[x * v + y] {
                pc.collinear_pp.push((x, y));
            } else {
                pc.noncollinear_pp.push((x, y));
            }
        }
    }
    for a in 0..d.b() {
        for b in 0..d.b() {
            if a == b {
                continue;
            }
            if d.meet(a, b) > 0 {
                pc.intersecting_bb.push((a, b));
            } else {
                pc.nonintersecting_bb.push((a, b));
            }
        }
    }
    pc
}

/// One line of a pairwise-transitivity report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub size: usize,
    pub transitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseReport {
    pub incident_pb: ClassVerdict,
    pub nonincident_pb: ClassVerdict,
    pub collinear_pp: ClassVerdict,
    pub noncollinear_pp: ClassVerdict,
    pub intersecting_bb: ClassVerdict,
    pub nonintersecting_bb: ClassVerdict,
    pub overall: bool,
}

impl PairwiseReport {
    pub fn verdicts(&self) -> [(&'static str, ClassVerdict); 6] {
        [
            ("incident_pb", self.incident_pb),
            ("nonincident_pb", self.nonincident_pb),
            ("collinear_pp", self.collinear_pp),
            ("noncollinear_pp", self.noncollinear_pp),
            ("intersecting_bb", self.intersecting_bb),
            ("nonintersecting_bb", self.nonintersecting_bb),
        ]
    }
}

/// Decides transitivity of `g` (acting on points⊔blocks) on each of the six pair classes.
pub fn is_pairwise_transitive(d: &Design, g: &PermGroup) -> Result<PairwiseReport, DesignError> {
    d.check_automorphisms(g)?;
    let pc = pair_classes(d);
    let v = d.v();
    let verdict = |pairs: &[(usize, usize)], shift_a: usize, shift_b: usize| -> Result<ClassVerdict, DesignError> {
        let tuples: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&(a, b)| vec![a + shift_a, b + shift_b])
            .collect();
        Ok(ClassVerdict {
            size: tuples.len(),
            transitive: g.is_transitive_on(&tuples)?,
        })
    };
    let incident_pb = verdict(&pc.incident_pb, 0, v)?;
    let nonincident_pb = verdict(&pc.nonincident_pb, 0, v)?;
    let collinear_pp = verdict(&pc.collinear_pp, 0, 0)?;
    let noncollinear_pp = verdict(&pc.noncollinear_pp, 0, 0)?;
    let intersecting_bb = verdict(&pc.intersecting_bb, v, v)?;
    let nonintersecting_bb = verdict(&pc.nonintersecting_bb, v, v)?;
    let overall = [
        incident_pb,
        nonincident_pb,
        collinear_pp,
        noncollinear_pp,
        intersecting_bb,
        nonintersecting_bb,
    ]
    .iter()
    .all(|c| c.transitive);
    Ok(PairwiseReport {
        incident_pb,
        nonincident_pb,
        collinear_pp,
        noncollinear_pp,
        intersecting_bb,
        nonintersecting_bb,
        overall,
    })
}

/// Successful nicely-affine verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NicelyAffine {
    /// Common cross-class intersection size; 0 when there is a single class.
    pub mu: usize,
    pub single_class: bool,
    /// N-orbits on blocks (block indices), each a parallel class.
    pub classes: Vec<Vec<usize>>,
}

/// Why a design fails to be nicely affine for a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotNicelyAffine {
    #[error("group does not act on the design (generator {generator})")]
    NotAutomorphism { generator: usize },
    #[error("group has {orbits} orbits on points")]
    NotPointTransitive { orbits: usize },
    #[error("blocks {a} and {b} lie in the same orbit but meet in {size} points")]
    SameClassMeet { a: usize, b: usize, size: usize },
    #[error("blocks {a} and {b} lie in different orbits and are disjoint")]
    CrossClassDisjoint { a: usize, b: usize },
    #[error("blocks {a} and {b} meet in {size} points, expected {expected}")]
    UnequalCrossMeet {
        a: usize,
        b: usize,
        size: usize,
        expected: usize,
    },
}

/// Decides whether `d` is nicely affine for `n` (acting on points⊔blocks).
pub fn is_nicely_affine(d: &Design, n: &PermGroup) -> Result<NicelyAffine, NotNicelyAffine> {
    match d.check_automorphisms(n) {
        Ok(()) => {}
        Err(DesignError::NotAutomorphism(i)) => {
            return Err(NotNicelyAffine::NotAutomorphism { generator: i })
        }
        Err(_) => return Err(NotNicelyAffine::NotAutomorphism { generator: 0 }),
    }
    let points: Vec<usize> = (0..d.v()).collect();
    let point_orbits = n.orbits_on(&points).expect("points in range");
    if point_orbits.len() != 1 {
        return Err(NotNicelyAffine::NotPointTransitive {
            orbits: point_orbits.len(),
        });
    }
    let block_vertices: Vec<usize> = (0..d.b()).map(|b| d.v() + b).collect();
    let classes: Vec<Vec<usize>> = n
        .orbits_on(&block_vertices)
        .expect("blocks in range")
        .into_iter()
        .map(|o| o.into_iter().map(|x| x - d.v()).collect())
        .collect();
    let mut class_of = vec![0; d.b()];
    for (i, c) in classes.iter().enumerate() {
        for &b in c {
            class_of[b] = i;
        }
    }
    let mut mu: Option<usize> = None;
    for a in 0..d.b() {
        for b in a + 1..d.b() {
            let size = d.meet(a, b);
            if class_of[a] == class_of[b] {
                if size != 0 {
                    return Err(NotNicelyAffine::SameClassMeet { a, b, size });
                }
                continue;
            }
            if size == 0 {
                return Err(NotNicelyAffine::CrossClassDisjoint { a, b });
            }
            match mu {
                None => mu = Some(size),
                Some(expected) if expected != size => {
                    return Err(NotNicelyAffine::UnequalCrossMeet {
                        a,
                        b,
                        size,
                        expected,
                    })
                }
                _ => {}
            }
        }
    }
    Ok(NicelyAffine {
        mu: mu.unwrap_or(0),
        single_class: classes.len() == 1,
        classes,
    })
}

/// `true` iff the blocks in `class` are pairwise disjoint and cover every point.
pub fn is_parallel_class(d: &Design, class: &[usize]) -> bool {
    let mut covered = vec![false; d.v()];
    for &b in class {
        for &x in d.block(b) {
            if covered[x] {
                return false;
            }
            covered[x] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Checks that the point stabiliser of `g` is 2-transitive on `classes`.
///
/// Reduced to transitivity of `g` on triples (point, class, other class), with
/// `g` acting on points ⊔ classes through its induced action.
pub fn stabilizer_two_transitive_on_classes(
    d: &Design,
    g: &PermGroup,
    classes: &[Vec<usize>],
) -> Result<bool, DesignError> {
    let mut parts: Vec<Vec<usize>> = (0..d.v()).map(|x| vec![x]).collect();
    parts.extend(
        classes
            .iter()
            .map(|c| c.iter().map(|&b| d.v() + b).collect::<Vec<_>>()),
    );
    let action = g.induced_action(&parts)?;
    if !action.group.is_transitive(&(0..d.v()).collect::<Vec<_>>())? {
        return Ok(false);
    }
    let r = classes.len();
    let mut triples = Vec::new();
    for x in 0..d.v() {
        for c1 in 0..r {
            for c2 in 0..r {
                if c1 != c2 {
                    triples.push(vec![x, d.v() + c1, d.v() + c2]);
                }
            }
        }
    }
    Ok(action.group.is_transitive_on(&triples)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::fixtures::{complete_design, degenerate_design, grid_design};

    #[test]
    fn single_block_pair_classes() {
        let d = Design::new(2, vec![vec![0, 1]]).unwrap();
        let pc = pair_classes(&d);
        assert_eq!(pc.collinear_pp, vec![(0, 1), (1, 0)]);
        assert!(pc.noncollinear_pp.is_empty());
    }

    #[test]
    fn degenerate_has_no_intersecting_blocks() {
        let (d, _) = degenerate_design(2, 2).unwrap();
        let pc = pair_classes(&d);
        assert!(pc.intersecting_bb.is_empty());
        assert_eq!(pc.nonintersecting_bb, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn complete_design_is_pairwise_transitive() {
        let (d, g) = complete_design(4).unwrap();
        let report = is_pairwise_transitive(&d, &g).unwrap();
        assert!(report.overall);
        assert_eq!(report.noncollinear_pp.size, 0);
        assert_eq!(report.nonintersecting_bb.size, 0);
    }

    #[test]
    fn degenerate_is_pairwise_transitive_and_nicely_affine() {
        let (d, g) = degenerate_design(3, 2).unwrap();
        assert!(is_pairwise_transitive(&d, &g).unwrap().overall);
        let na = is_nicely_affine(&d, &g).unwrap();
        assert!(na.single_class);
        assert_eq!(na.mu, 0);
    }

    #[test]
    fn grid_is_nicely_affine_with_mixed_block_sizes() {
        let (d, n) = grid_design(3, 2).unwrap();
        let na = is_nicely_affine(&d, &n).unwrap();
        assert_eq!(na.mu, 1);
        assert_eq!(na.classes.len(), 2);
        let mut sizes: Vec<usize> = na.classes.iter().map(|c| d.block(c[0]).len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
        for c in &na.classes {
            assert!(is_parallel_class(&d, c));
        }
        // blocks of two sizes: no group can be transitive on incident pairs and blocks at once
        assert!(!is_pairwise_transitive(&d, &n).unwrap().overall);
    }

    #[test]
    fn non_automorphism_rejected() {
        let d = Design::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        // swaps points 0 and 1 but fixes the blocks
        let g = PermGroup::from_cycle_strings(5, &["(0 1)"]).unwrap();
        assert!(matches!(
            is_pairwise_transitive(&d, &g),
            Err(DesignError::NotAutomorphism(0))
        ));
        assert!(matches!(
            is_nicely_affine(&d, &g),
            Err(NotNicelyAffine::NotAutomorphism { generator: 0 })
        ));
    }
}
