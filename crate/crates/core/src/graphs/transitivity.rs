use serde::Serialize;

use super::{Graph, GraphError};
use crate::permgroup::PermGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    /// Smallest vertex of the `G`-orbit being tested.
    pub orbit_rep: usize,
    pub distance: usize,
    /// Number of pairs `(u, w)` with `u` in the orbit and `d(u, w) = distance`.
    pub pairs: usize,
    pub transitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalDtReport {
    pub s: usize,
    pub diameter: usize,
    /// `min(s, diameter)`: the levels that were actually examined.
    pub effective_s: usize,
    pub levels: Vec<LevelVerdict>,
    pub failure: Option<LevelVerdict>,
    /// `false` whenever `s` exceeds the diameter.
    pub holds: bool,
}

/// Decides local `(G, s)`-distance transitivity.
///
/// `G_u` is transitive on the sphere of radius `i` about `u` for every `u` in a
/// `G`-orbit exactly when `G` is transitive on the pairs at distance `i` starting
/// in that orbit, so only whole-group orbits on pairs are computed.
pub fn local_distance_transitivity(
    g: &Graph,
    grp: &PermGroup,
    s: usize,
) -> Result<LocalDtReport, GraphError> {
    if s == 0 {
        return Err(GraphError::InvalidParameters("s must be at least 1".into()));
    }
    g.check_automorphisms(grp)?;
    let diameter = g.max_distance();
    let effective_s = s.min(diameter);
    let mut levels = Vec::new();
    let mut failure = None;
    for orbit in grp.orbits() {
        let rep = orbit[0];
        for i in 1..=effective_s {
            let mut pairs = Vec::new();
            for &u in &orbit {
                pairs.extend(g.sphere(u, i).into_iter().map(|w| [u, w]));
            }
            let transitive = match pairs.first() {
                None => true,
                Some(first) => grp.orbit_on_tuples(first)?.len() == pairs.len(),
            };
            let verdict = LevelVerdict {
                orbit_rep: rep,
                distance: i,
                pairs: pairs.len(),
                transitive,
            };
            levels.push(verdict);
            if !transitive && failure.is_none() {
                failure = Some(verdict);
            }
        }
    }
    Ok(LocalDtReport {
        s,
        diameter,
        effective_s,
        holds: failure.is_none() && s <= diameter,
        levels,
        failure,
    })
}

pub fn is_locally_s_distance_transitive(g: &Graph, grp: &PermGroup, s: usize) -> Result<bool, GraphError> {
    Ok(local_distance_transitivity(g, grp, s)?.holds)
}

/// All walks `(v_0, ..., v_s)` from `start` without immediate backtracking.
pub fn s_arcs_from(g: &Graph, start: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut walk = vec![start];
    extend_arcs(g, s, &mut walk, &mut out);
    out
}

fn extend_arcs(g: &Graph, s: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if walk.len() == s + 1 {
        out.push(walk.clone());
        return;
    }
    let last = walk[walk.len() - 1];
    let back = (walk.len() >= 2).then(|| walk[walk.len() - 2]);
    for &y in g.neighbors(last) {
        if Some(y) == back {
            continue;
        }
        walk.push(y);
        extend_arcs(g, s, walk, out);
        walk.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcOrbitVerdict {
    pub orbit_rep: usize,
    pub arcs: usize,
    pub transitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SArcReport {
    pub s: usize,
    pub per_orbit: Vec<ArcOrbitVerdict>,
    /// Transitive on the s-arcs starting in each vertex orbit.
    pub locally: bool,
    /// Transitive on all s-arcs.
    pub transitive: bool,
}

pub fn s_arc_report(g: &Graph, grp: &PermGroup, s: usize) -> Result<SArcReport, GraphError> {
    if s == 0 {
        return Err(GraphError::InvalidParameters("s must be at least 1".into()));
    }
    g.check_automorphisms(grp)?;
    let mut per_orbit = Vec::new();
    let mut total = 0;
    let mut first_arc: Option<Vec<usize>> = None;
    for orbit in grp.orbits() {
        let arcs: Vec<Vec<usize>> = orbit.iter().flat_map(|&u| s_arcs_from(g, u, s)).collect();
        total += arcs.len();
        let transitive = match arcs.first() {
            None => true,
            Some(a) => grp.orbit_on_tuples(a)?.len() == arcs.len(),
        };
        if first_arc.is_none() {
            first_arc = arcs.first().cloned();
        }
        per_orbit.push(ArcOrbitVerdict {
            orbit_rep: orbit[0],
            arcs: arcs.len(),
            transitive,
        });
    }
    let transitive = match &first_arc {
        None => true,
        Some(a) => grp.orbit_on_tuples(a)?.len() == total,
    };
    Ok(SArcReport {
        s,
        locally: per_orbit.iter().all(|o| o.transitive),
        per_orbit,
        transitive,
    })
}

pub fn is_s_arc_transitive(g: &Graph, grp: &PermGroup, s: usize) -> Result<bool, GraphError> {
    Ok(s_arc_report(g, grp, s)?.transitive)
}

pub fn is_locally_s_arc_transitive(g: &Graph, grp: &PermGroup, s: usize) -> Result<bool, GraphError> {
    Ok(s_arc_report(g, grp, s)?.locally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::BipartiteGraph;
    use crate::permgroup::Permutation;

    fn dihedral(n: usize) -> PermGroup {
        let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::new(n, vec![rot, refl]).unwrap()
    }

    #[test]
    fn cycle_is_distance_transitive() {
        let c = Graph::cycle(8).unwrap();
        let g = dihedral(8);
        assert_eq!(g.order(), 16);
        let report = local_distance_transitivity(&c, &g, 4).unwrap();
        assert!(report.holds);
        assert_eq!(report.levels.len(), 4);
        let beyond = local_distance_transitivity(&c, &g, 5).unwrap();
        assert!(!beyond.holds);
        assert_eq!(beyond.effective_s, 4);
        assert!(beyond.failure.is_none());
    }

    #[test]
    fn rotations_fail_at_distance_one() {
        let c = Graph::cycle(6).unwrap();
        let rot = PermGroup::from_cycle_strings(6, &["(0 1 2 3 4 5)"]).unwrap();
        let report = local_distance_transitivity(&c, &rot, 2).unwrap();
        assert!(!report.holds);
        assert_eq!(report.failure.unwrap().distance, 1);
    }

    #[test]
    fn hexagon_two_arcs() {
        let c = Graph::cycle(6).unwrap();
        assert!(is_s_arc_transitive(&c, &dihedral(6), 2).unwrap());
        assert_eq!(s_arcs_from(&c, 0, 3).len(), 2);
    }

    #[test]
    fn k33_arcs() {
        let k = BipartiteGraph::complete_bipartite(3, 3).unwrap();
        let full = PermGroup::from_cycle_strings(6, &["(0 1)", "(0 1 2)", "(0 3)(1 4)(2 5)"]).unwrap();
        assert_eq!(full.order(), 72);
        assert!(is_s_arc_transitive(&k, &full, 2).unwrap());
        // regular cyclic group: 0 -> 3 -> 1 -> 4 -> 2 -> 5
        let cyc = PermGroup::from_cycle_strings(6, &["(0 3 1 4 2 5)"]).unwrap();
        assert_eq!(cyc.order(), 6);
        assert!(cyc.is_transitive(&(0..6).collect::<Vec<_>>()).unwrap());
        assert!(!is_s_arc_transitive(&k, &cyc, 1).unwrap());
    }

    #[test]
    fn non_automorphism_rejected() {
        let c = Graph::cycle(4).unwrap();
        let g = PermGroup::from_cycle_strings(4, &["(0 1)"]).unwrap();
        assert!(matches!(
            local_distance_transitivity(&c, &g, 1),
            Err(GraphError::NotAutomorphism(0))
        ));
    }
}
