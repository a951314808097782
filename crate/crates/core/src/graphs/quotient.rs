use serde::Serialize;

use super::{BipartiteGraph, Graph, GraphError};
use crate::permgroup::PermGroup;

/// Graph on the `N`-orbits, two orbits adjacent when some edge joins them.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    pub graph: Graph,
}

impl Quotient {
    /// `Some(r)` when the quotient is `K_{1,r}` with `r >= 2`, read off the degree sequence.
    pub fn star_size(&self) -> Option<usize> {
        let n = self.graph.order();
        if n < 3 || self.graph.edge_count() != n - 1 {
            return None;
        }
        let r = n - 1;
        let centres = (0..n).filter(|&x| self.graph.degree(x) == r).count();
        let leaves = (0..n).filter(|&x| self.graph.degree(x) == 1).count();
        (centres == 1 && leaves == r).then_some(r)
    }
}

/// Quotient by the orbits of `n`, without any normality check.
pub fn orbit_quotient(g: &Graph, n: &PermGroup) -> Result<Quotient, GraphError> {
    g.check_automorphisms(n)?;
    let orbits = n.orbits();
    let mut orbit_of = vec![0; g.order()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, w)| (orbit_of[u], orbit_of[w]))
        .filter(|(a, b)| a != b)
        .collect();
    let graph = Graph::new(orbits.len(), &edges)?;
    Ok(Quotient {
        orbits,
        orbit_of,
        graph,
    })
}

/// The `G`-normal quotient relative to `N`.
pub fn normal_quotient(g: &Graph, grp: &PermGroup, n: &PermGroup) -> Result<Quotient, GraphError> {
    g.check_automorphisms(grp)?;
    check_normal(n, grp)?;
    orbit_quotient(g, n)
}

pub(crate) fn check_normal(n: &PermGroup, grp: &PermGroup) -> Result<(), GraphError> {
    if !n.is_subgroup_of(grp)? || !n.is_normal_in(grp)? {
        return Err(GraphError::NotNormal);
    }
    Ok(())
}

/// Returns `r` when `N` is transitive on `B` and has `r >= 2` orbits on `B'`.
pub fn is_starlike(g: &BipartiteGraph, n: &PermGroup) -> Result<Option<usize>, GraphError> {
    g.check_bipart_preserving(n)?;
    if !g.is_connected() || g.n_b() == 0 {
        return Ok(None);
    }
    if !n.is_transitive(&g.b_vertices())? {
        return Ok(None);
    }
    let r = n.orbits_on(&g.bp_vertices())?.len();
    Ok((r >= 2).then_some(r))
}

/// Starlike with either bipart playing the role of `B`.
pub fn is_starlike_either(g: &BipartiteGraph, n: &PermGroup) -> Result<Option<usize>, GraphError> {
    if let Some(r) = is_starlike(g, n)? {
        return Ok(Some(r));
    }
    let (swapped, map) = g.swapped();
    is_starlike(&swapped, &n.relabel(&map))
}

/// `true` iff `G` is transitive on the (unordered) edges.
pub fn is_edge_transitive(g: &Graph, grp: &PermGroup) -> Result<bool, GraphError> {
    g.check_automorphisms(grp)?;
    let edges = g.edges();
    match edges.first() {
        None => Ok(true),
        Some(&(u, w)) => Ok(grp.orbit_on_sets(&[u, w])?.len() == edges.len()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarEquivalence {
    pub quotient_star: Option<usize>,
    pub starlike: Option<usize>,
    pub agree: bool,
}

/// Compares "the normal quotient is `K_{1,r}`" with "Γ is `r`-starlike".
pub fn star_quotient_equivalence(
    g: &BipartiteGraph,
    grp: &PermGroup,
    n: &PermGroup,
) -> Result<StarEquivalence, GraphError> {
    if !is_edge_transitive(g, grp)? {
        return Err(GraphError::NotEdgeTransitive);
    }
    let quotient_star = normal_quotient(g, grp, n)?.star_size();
    let starlike = is_starlike_either(g, n)?;
    Ok(StarEquivalence {
        quotient_star,
        starlike,
        agree: quotient_star == starlike,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarInvariants {
    pub r: usize,
    pub valency_is_r: bool,
    pub one_neighbour_per_orbit: bool,
    /// Smallest distance between distinct vertices of one `N`-orbit on `B'`.
    pub min_orbit_distance: Option<usize>,
    pub holds: bool,
}

/// Valency, orbit-meeting and separation invariants of an `r`-starlike graph.
pub fn star_invariants(g: &BipartiteGraph, n: &PermGroup, r: usize) -> Result<StarInvariants, GraphError> {
    g.check_bipart_preserving(n)?;
    let orbits = n.orbits_on(&g.bp_vertices())?;
    let mut orbit_of = vec![usize::MAX; g.order()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    let valency_is_r = g.b_vertices().iter().all(|&x| g.degree(x) == r);
    let one_neighbour_per_orbit = g.b_vertices().iter().all(|&x| {
        let mut hits = vec![0usize; orbits.len()];
        for &y in g.neighbors(x) {
            hits[orbit_of[y]] += 1;
        }
        hits.iter().all(|&h| h == 1)
    });
    let min_orbit_distance = orbits
        .iter()
        .flat_map(|o| {
            o.iter().enumerate().flat_map(move |(i, &a)| {
                o[i + 1..].iter().map(move |&b| g.distance(a, b).unwrap_or(usize::MAX))
            })
        })
        .min();
    Ok(StarInvariants {
        r,
        valency_is_r,
        one_neighbour_per_orbit,
        min_orbit_distance,
        holds: valency_is_r && one_neighbour_per_orbit && min_orbit_distance.is_none_or(|d| d >= 4),
    })
}
