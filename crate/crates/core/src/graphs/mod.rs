//! Finite simple graphs with bitset adjacency, the standard catalog
//! (cycles, paths, cliques, hypercubes, shattering graphs), bipartition
//! analysis and subgraph containment search.

mod bipartite;
mod bitset;
mod catalog;
mod search;
mod text;

use thiserror::Error;

pub use bipartite::{bipartition, component_colorings, min_side_max_degree, Bipartition, Coloring};
pub use bitset::Bitset;
pub use catalog::{
    complete_graph, cycle_graph, hypercube_graph, path_graph, recognize, shattering_graph, shattering_vertex,
    CatalogGraph, ShatteringVertex,
};
pub use search::{contains_induced_subgraph, contains_subgraph, Containment, Embedding, SubgraphSearch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{what} needs parameter at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("{what} parameter {got} exceeds the supported maximum {max}")]
    TooLarge { what: &'static str, max: usize, got: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph text line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown catalog graph `{0}` (expected C<n>, P<n>, K<n>, Q<k> or S<k>)")]
    UnknownCatalogName(String),
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<Bitset>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, rows: vec![Bitset::new(n); n], edge_count: 0 }
    }

    /// Builds a graph from an edge list; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Assembles a graph from symmetric, loop-free adjacency rows.
    pub(crate) fn from_rows(rows: Vec<Bitset>) -> Graph {
        let n = rows.len();
        debug_assert!((0..n).all(|u| !rows[u].contains(u) && rows[u].ones().all(|v| rows[v].contains(u))));
        let edge_count = rows.iter().map(Bitset::count).sum::<usize>() / 2;
        Graph { n, rows, edge_count }
    }

    /// Adds `{u, v}`; returns whether it was new.
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.edge_count += 1;
        true
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].remove(v);
        self.rows[v].remove(u);
        self.edge_count -= 1;
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn row(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.rows[v].is_empty()).collect()
    }

    /// The graph with isolated vertices removed, plus the original index of
    /// every kept vertex.
    pub fn without_isolated_vertices(&self) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n).filter(|&v| !self.rows[v].is_empty()).collect();
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in kept.iter().enumerate() {
            relabel[v] = i;
        }
        let mut g = Graph::empty(kept.len());
        for (u, v) in self.edges() {
            g.add_edge(relabel[u], relabel[v]);
        }
        (g, kept)
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Renders the edge list as `u-v;u-v;...`.
    pub fn edge_list_string(&self) -> String {
        self.edges().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_pairs() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]).unwrap_err(), GraphError::SelfLoop(0));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { v: 3, n: 3 }
        );
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(2, 1));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn isolated_vertices_can_be_dropped() {
        let g = Graph::from_edges(5, &[(1, 3), (3, 4)]).unwrap();
        assert_eq!(g.isolated_vertices(), vec![0, 2]);
        let (h, kept) = g.without_isolated_vertices();
        assert_eq!(kept, vec![1, 3, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn remove_edge_updates_count() {
        let mut g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(g.remove_edge(1, 0));
        assert!(!g.remove_edge(1, 0));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_list_string(), "1-2");
    }
}
