use super::{BipartiteGraph, GraphError};
use crate::incidence::Design;
use crate::permgroup::PermGroup;

/// Incidence graph with `B` the points and `B'` the blocks, indexed as points⊔blocks.
pub fn incidence_graph(d: &Design) -> BipartiteGraph {
    let mut edges = Vec::with_capacity(d.incidences());
    for (i, block) in d.blocks().iter().enumerate() {
        edges.extend(block.iter().map(|&x| (x, d.v() + i)));
    }
    BipartiteGraph::new(d.v(), d.b(), &edges).expect("incidence edges cross the bipartition")
}

/// Adjacency design of a bipartite graph and the vertex relabelling into points⊔blocks.
#[derive(Debug, Clone)]
pub struct AdjacencyDesign {
    pub design: Design,
    /// `vertex_map[graph vertex] = design vertex`
    pub vertex_map: Vec<usize>,
}

impl AdjacencyDesign {
    pub fn transport(&self, g: &PermGroup) -> PermGroup {
        g.relabel(&self.vertex_map)
    }

    /// `true` when the relabelling is the identity.
    pub fn is_aligned(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Points are `B`; each `B'`-vertex contributes its neighbourhood as a block.
pub fn adjacency_design(g: &BipartiteGraph) -> Result<AdjacencyDesign, GraphError> {
    let n_b = g.n_b();
    let mut order: Vec<usize> = g.bp_vertices();
    for &y in &order {
        if g.degree(y) == 0 {
            return Err(GraphError::IsolatedVertex(y));
        }
    }
    // same order as canonical block sorting, ties broken by vertex index
    order.sort_by(|&a, &b| g.neighbors(a).cmp(g.neighbors(b)).then(a.cmp(&b)));
    let blocks: Vec<Vec<usize>> = order.iter().map(|&y| g.neighbors(y).to_vec()).collect();
    let design = Design::new(n_b, blocks)?;
    let mut vertex_map: Vec<usize> = (0..g.order()).collect();
    for (pos, &y) in order.iter().enumerate() {
        vertex_map[y] = n_b + pos;
    }
    Ok(AdjacencyDesign { design, vertex_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::fixtures::{complete_design, degenerate_design};

    #[test]
    fn degenerate_graph_is_disjoint_stars() {
        let (d, _) = degenerate_design(2, 3).unwrap();
        let g = incidence_graph(&d);
        assert!(!g.is_connected());
        for b in g.bp_vertices() {
            assert_eq!(g.degree(b), 2);
        }
        for x in g.b_vertices() {
            assert_eq!(g.degree(x), 1);
        }
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn complete_three_is_hexagon() {
        let (d, _) = complete_design(3).unwrap();
        let g = incidence_graph(&d);
        assert_eq!(g.order(), 6);
        assert!((0..6).all(|x| g.degree(x) == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn unsorted_blocks_are_relabelled() {
        // B' vertex 2 has neighbourhood {1}, vertex 3 has {0}
        let g = BipartiteGraph::new(2, 2, &[(1, 2), (0, 3)]).unwrap();
        let ad = adjacency_design(&g).unwrap();
        assert_eq!(ad.design.blocks(), &[vec![0], vec![1]]);
        assert_eq!(ad.vertex_map, vec![0, 1, 3, 2]);
        assert!(!ad.is_aligned());
        let back = incidence_graph(&ad.design);
        for (u, w) in g.edges() {
            assert!(back.is_adjacent(ad.vertex_map[u], ad.vertex_map[w]));
        }
    }

    #[test]
    fn isolated_block_vertex_rejected() {
        let g = BipartiteGraph::new(1, 2, &[(0, 1)]).unwrap();
        assert!(matches!(adjacency_design(&g), Err(GraphError::IsolatedVertex(2))));
    }
}
