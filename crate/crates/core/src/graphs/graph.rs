use std::collections::{HashMap, VecDeque};
use std::ops::Deref;

use serde::Serialize;

use super::GraphError;
use crate::permgroup::PermGroup;

const UNREACHABLE: u32 = u32::MAX;

/// Simple undirected graph with all-pairs BFS distances computed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
}

/// BFS levels from a vertex; `levels[i]` is the sphere of radius `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistancePartition {
    pub levels: Vec<Vec<usize>>,
    pub unreachable: Vec<usize>,
}

impl DistancePartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, w) in edges {
            for x in [u, w] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == w {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(w);
            adj[w].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted(adj))
    }

    fn from_sorted(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let mut dist = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut row = vec![UNREACHABLE; n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if row[y] == UNREACHABLE {
                        row[y] = row[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            dist.push(row);
        }
        Graph { adj, dist }
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameters("cycle needs n >= 3".into()));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn is_adjacent(&self, u: usize, w: usize) -> bool {
        self.adj[u].binary_search(&w).is_ok()
    }

    /// Edges `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&w| w > u).map(|&w| (u, w)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn distance(&self, u: usize, w: usize) -> Option<usize> {
        let d = self.dist[u][w];
        (d != UNREACHABLE).then_some(d as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.dist[0].iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest finite distance from `x`.
    pub fn eccentricity(&self, x: usize) -> usize {
        self.dist[x]
            .iter()
            .filter(|&&d| d != UNREACHABLE)
            .max()
            .copied()
            .unwrap_or(0) as usize
    }

    /// Diameter of a connected graph.
    pub fn diameter(&self) -> Option<usize> {
        self.is_connected()
            .then(|| (0..self.order()).map(|x| self.eccentricity(x)).max().unwrap_or(0))
    }

    /// Largest finite distance, also defined for disconnected graphs.
    pub fn max_distance(&self) -> usize {
        (0..self.order()).map(|x| self.eccentricity(x)).max().unwrap_or(0)
    }

    pub fn distance_partition(&self, x: usize) -> DistancePartition {
        let mut levels = vec![Vec::new(); self.eccentricity(x) + 1];
        let mut unreachable = Vec::new();
        for (y, &d) in self.dist[x].iter().enumerate() {
            if d == UNREACHABLE {
                unreachable.push(y);
            } else {
                levels[d as usize].push(y);
            }
        }
        DistancePartition {
            levels,
            unreachable,
        }
    }

    /// Vertices at distance exactly `i` from `x`.
    pub fn sphere(&self, x: usize, i: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&y| self.dist[x][y] == i as u32)
            .collect()
    }

    /// `true` iff two distinct vertices have the same neighbourhood.
    pub fn has_twin_vertices(&self) -> bool {
        self.twin_pair().is_some()
    }

    pub fn twin_pair(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for (x, list) in self.adj.iter().enumerate() {
            if let Some(&y) = seen.get(list.as_slice()) {
                return Some((y, x));
            }
            seen.insert(list, x);
        }
        None
    }

    /// Checks that every generator of `g` maps edges to edges.
    pub fn check_automorphisms(&self, g: &PermGroup) -> Result<(), GraphError> {
        if g.degree() != self.order() {
            return Err(GraphError::DegreeMismatch {
                expected: self.order(),
                found: g.degree(),
            });
        }
        for (i, p) in g.generators().iter().enumerate() {
            for (u, list) in self.adj.iter().enumerate() {
                if self.adj[p.apply(u)].len() != list.len() {
                    return Err(GraphError::NotAutomorphism(i));
                }
                if list.iter().any(|&w| !self.is_adjacent(p.apply(u), p.apply(w))) {
                    return Err(GraphError::NotAutomorphism(i));
                }
            }
        }
        Ok(())
    }

    /// Subgraph on `vertices`, relabelled by position in the slice.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &x) in vertices.iter().enumerate() {
            pos[x] = i;
        }
        let adj = vertices
            .iter()
            .map(|&x| {
                let mut list: Vec<usize> = self.adj[x]
                    .iter()
                    .filter(|&&y| pos[y] != usize::MAX)
                    .map(|&y| pos[y])
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_sorted(adj)
    }
}

/// Bipartite graph with ordered bipartition `(B | B')`; `B` is `0..n_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_b: usize,
    graph: Graph,
}

impl Deref for BipartiteGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

impl BipartiteGraph {
    pub fn new(n_b: usize, n_bp: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_graph(Graph::new(n_b + n_bp, edges)?, n_b)
    }

    pub fn from_graph(graph: Graph, n_b: usize) -> Result<Self, GraphError> {
        if n_b > graph.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: n_b,
                n: graph.order(),
            });
        }
        for (u, w) in graph.edges() {
            if (u < n_b) == (w < n_b) {
                return Err(GraphError::NotBipartite { u, w });
            }
        }
        Ok(BipartiteGraph { n_b, graph })
    }

    pub fn complete_bipartite(n: usize, m: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                edges.push((a, n + b));
            }
        }
        BipartiteGraph::new(n, m, &edges)
    }

    /// Even cycle `C_{2m}` with `B` the even positions.
    pub fn even_cycle(m: usize) -> Result<Self, GraphError> {
        if m < 2 {
            return Err(GraphError::InvalidParameters("even cycle needs length >= 4".into()));
        }
        // position 2i -> i, position 2i+1 -> m+i
        let label = |p: usize| if p.is_multiple_of(2) { p / 2 } else { m + p / 2 };
        let edges: Vec<(usize, usize)> = (0..2 * m)
            .map(|p| (label(p), label((p + 1) % (2 * m))))
            .collect();
        BipartiteGraph::new(m, m, &edges)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn n_bp(&self) -> usize {
        self.graph.order() - self.n_b
    }

    pub fn in_b(&self, x: usize) -> bool {
        x < self.n_b
    }

    pub fn b_vertices(&self) -> Vec<usize> {
        (0..self.n_b).collect()
    }

    pub fn bp_vertices(&self) -> Vec<usize> {
        (self.n_b..self.graph.order()).collect()
    }

    /// Checks that `g` is a group of automorphisms fixing each bipart setwise.
    pub fn check_bipart_preserving(&self, g: &PermGroup) -> Result<(), GraphError> {
        self.graph.check_automorphisms(g)?;
        for (i, p) in g.generators().iter().enumerate() {
            if (0..self.n_b).any(|x| p.apply(x) >= self.n_b) {
                return Err(GraphError::MovesBiparts(i));
            }
        }
        Ok(())
    }

    /// Removes one vertex; returns the smaller graph and the old indices of its vertices.
    pub fn remove_vertex(&self, x: usize) -> (BipartiteGraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.order()).filter(|&y| y != x).collect();
        let n_b = self.n_b - usize::from(x < self.n_b);
        let graph = self.graph.induced_subgraph(&keep);
        (BipartiteGraph { n_b, graph }, keep)
    }

    /// The same graph with `B` and `B'` exchanged; `map[old] = new`.
    pub fn swapped(&self) -> (BipartiteGraph, Vec<usize>) {
        let n_bp = self.n_bp();
        let map: Vec<usize> = (0..self.order())
            .map(|x| if x < self.n_b { n_bp + x } else { x - self.n_b })
            .collect();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, w)| (map[u], map[w]))
            .collect();
        let g = BipartiteGraph::new(n_bp, self.n_b, &edges).expect("relabelled bipartite graph");
        (g, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_partition() {
        let g = BipartiteGraph::complete_bipartite(1, 3).unwrap();
        let dp = g.distance_partition(0);
        assert_eq!(dp.levels, vec![vec![0], vec![1, 2, 3]]);
        assert!(dp.unreachable.is_empty());
    }

    #[test]
    fn cycle_distances() {
        let c = Graph::cycle(8).unwrap();
        assert_eq!(c.diameter(), Some(4));
        assert_eq!(c.distance_partition(0).sizes(), vec![1, 2, 2, 2, 1]);
        assert!(!c.has_twin_vertices());
    }

    #[test]
    fn twins() {
        assert!(BipartiteGraph::complete_bipartite(2, 3).unwrap().has_twin_vertices());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0))));
        assert!(matches!(
            BipartiteGraph::new(1, 2, &[(1, 2)]),
            Err(GraphError::NotBipartite { .. })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn even_cycle_is_bipartite_cycle() {
        let c = BipartiteGraph::even_cycle(6).unwrap();
        assert_eq!(c.order(), 12);
        assert!((0..12).all(|x| c.degree(x) == 2));
        assert_eq!(c.diameter(), Some(6));
    }

    #[test]
    fn swap_and_remove() {
        let g = BipartiteGraph::complete_bipartite(2, 3).unwrap();
        let (s, map) = g.swapped();
        assert_eq!((s.n_b(), s.n_bp()), (3, 2));
        assert!(s.is_adjacent(map[0], map[2]));
        let (h, keep) = g.remove_vertex(3);
        assert_eq!((h.n_b(), h.n_bp()), (2, 2));
        assert_eq!(keep, vec![0, 1, 2, 4]);
    }

    #[test]
    fn disconnected_levels() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.diameter(), None);
        assert_eq!(g.distance_partition(0).unreachable, vec![2, 3]);
    }
}
