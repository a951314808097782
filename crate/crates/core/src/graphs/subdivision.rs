use std::collections::HashMap;

use super::{BipartiteGraph, Graph, GraphError};
use crate::permgroup::{PermGroup, Permutation};

/// Subdivision graph `S(Σ)`: `B` is the edge list of `Σ` (in `Graph::edges` order),
/// `B'` its vertices shifted by the edge count.
pub fn subdivision(sigma: &Graph) -> BipartiteGraph {
    let edges = sigma.edges();
    let m = edges.len();
    let mut out = Vec::with_capacity(2 * m);
    for (i, &(a, b)) in edges.iter().enumerate() {
        out.push((i, m + a));
        out.push((i, m + b));
    }
    BipartiteGraph::new(m, sigma.order(), &out).expect("subdivision edges cross the bipartition")
}

/// Lifts a group on the vertices of `Σ` to `S(Σ)`.
pub fn subdivision_group(sigma: &Graph, g: &PermGroup) -> Result<PermGroup, GraphError> {
    sigma.check_automorphisms(g)?;
    let edges = sigma.edges();
    let m = edges.len();
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|p| {
            let mut images: Vec<usize> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p.apply(a), p.apply(b));
                    index[&(x.min(y), x.max(y))]
                })
                .collect();
            images.extend(p.images().map(|x| m + x));
            Permutation::from_images(images).expect("edge map is a bijection")
        })
        .collect();
    Ok(PermGroup::new(m + sigma.order(), gens)?)
}

/// Recovers `Σ` on the `B'`-vertices (relabelled `0..n_bp`) when every `B`-vertex
/// has valency 2 and no two `B`-vertices share their neighbour pair.
pub fn recover_base(g: &BipartiteGraph) -> Result<Graph, GraphError> {
    let n_b = g.n_b();
    let mut seen = HashMap::new();
    let mut edges = Vec::with_capacity(n_b);
    for x in 0..n_b {
        let nb = g.neighbors(x);
        if nb.len() != 2 {
            return Err(GraphError::RecoverBase(format!("vertex {x} has valency {}", nb.len())));
        }
        let e = (nb[0] - n_b, nb[1] - n_b);
        if let Some(y) = seen.insert(e, x) {
            return Err(GraphError::RecoverBase(format!("vertices {y} and {x} share neighbours")));
        }
        edges.push(e);
    }
    Graph::new(g.n_bp(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_subdivides_to_twelve_cycle() {
        let c6 = Graph::cycle(6).unwrap();
        let s = subdivision(&c6);
        assert_eq!((s.n_b(), s.n_bp()), (6, 6));
        assert!((0..12).all(|x| s.degree(x) == 2));
        assert_eq!(s.diameter(), Some(12 / 2));
        assert_eq!(recover_base(&s).unwrap(), c6);
    }

    #[test]
    fn k33_doubles_diameter() {
        let k = BipartiteGraph::complete_bipartite(3, 3).unwrap();
        let s = subdivision(&k);
        assert_eq!(s.order(), 15);
        assert_eq!(s.diameter(), Some(2 * k.diameter().unwrap()));
        assert_eq!(s.diameter(), Some(4));
    }

    #[test]
    fn group_lifts() {
        let c6 = Graph::cycle(6).unwrap();
        let g = PermGroup::from_cycle_strings(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"]).unwrap();
        let lifted = subdivision_group(&c6, &g).unwrap();
        subdivision(&c6).check_automorphisms(&lifted).unwrap();
        assert_eq!(lifted.order(), 12);
    }

    #[test]
    fn recover_base_preconditions() {
        let k = BipartiteGraph::complete_bipartite(3, 3).unwrap();
        assert!(matches!(recover_base(&k), Err(GraphError::RecoverBase(_))));
        let k22 = BipartiteGraph::complete_bipartite(2, 2).unwrap();
        assert!(matches!(recover_base(&k22), Err(GraphError::RecoverBase(_))));
    }
}
