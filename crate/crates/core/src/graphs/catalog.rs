use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};
use crate::graphs::search::{Containment, SubgraphSearch};

fn too_small(what: &'static str, min: usize, got: usize) -> Result<(), GraphError> {
    if got < min {
        Err(GraphError::TooSmall { what, min, got })
    } else {
        Ok(())
    }
}

/// `C_n`: `0 ~ 1 ~ ... ~ n-1 ~ 0`.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    too_small("cycle", 3, n)?;
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    Ok(g)
}

/// `P_n`: `n` vertices, `n - 1` edges.
pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    too_small("path", 1, n)?;
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    Ok(g)
}

pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    too_small("complete graph", 1, n)?;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// `Q_k`: vertex `b` is the bitstring `b`, edges join strings differing
/// in exactly one bit.
pub fn hypercube_graph(k: usize) -> Result<Graph, GraphError> {
    too_small("hypercube", 1, k)?;
    if k > 16 {
        return Err(GraphError::TooLarge { what: "hypercube", max: 16, got: k });
    }
    let n = 1usize << k;
    let mut g = Graph::empty(n);
    for v in 0..n {
        for bit in 0..k {
            let w = v ^ (1 << bit);
            if v < w {
                g.add_edge(v, w);
            }
        }
    }
    Ok(g)
}

/// Role of a vertex of `S_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShatteringVertex {
    /// The index `i` in `1..=k`.
    Index(usize),
    /// A subset of `{1..k}` as a bitmask (bit `i-1` set iff `i` is in it).
    Subset(usize),
}

/// Vertex layout of [`shattering_graph`]: `0..k` are the indices `1..=k`,
/// `k + m` is the subset with bitmask `m` (so `k` itself is the empty set).
pub fn shattering_vertex(k: usize, v: usize) -> ShatteringVertex {
    if v < k {
        ShatteringVertex::Index(v + 1)
    } else {
        ShatteringVertex::Subset(v - k)
    }
}

/// `S_k`: indices `1..=k` against all subsets of `{1..k}`, joined by the
/// element relation. The empty set is an isolated vertex.
pub fn shattering_graph(k: usize) -> Result<Graph, GraphError> {
    too_small("shattering graph", 1, k)?;
    if k > 16 {
        return Err(GraphError::TooLarge { what: "shattering graph", max: 16, got: k });
    }
    let mut g = Graph::empty(k + (1 << k));
    for mask in 0..1usize << k {
        for i in 0..k {
            if mask >> i & 1 == 1 {
                g.add_edge(i, k + mask);
            }
        }
    }
    Ok(g)
}

/// Named members of the catalog, written `C6`, `P3`, `K4`, `Q3`, `S2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogGraph {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Hypercube(usize),
    Shattering(usize),
}

impl CatalogGraph {
    pub fn build(self) -> Result<Graph, GraphError> {
        match self {
            CatalogGraph::Cycle(n) => cycle_graph(n),
            CatalogGraph::Path(n) => path_graph(n),
            CatalogGraph::Complete(n) => complete_graph(n),
            CatalogGraph::Hypercube(k) => hypercube_graph(k),
            CatalogGraph::Shattering(k) => shattering_graph(k),
        }
    }
}

impl fmt::Display for CatalogGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogGraph::Cycle(n) => write!(f, "C{n}"),
            CatalogGraph::Path(n) => write!(f, "P{n}"),
            CatalogGraph::Complete(n) => write!(f, "K{n}"),
            CatalogGraph::Hypercube(k) => write!(f, "Q{k}"),
            CatalogGraph::Shattering(k) => write!(f, "S{k}"),
        }
    }
}

impl FromStr for CatalogGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::UnknownCatalogName(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        Ok(match kind.to_ascii_uppercase() {
            'C' => CatalogGraph::Cycle(n),
            'P' => CatalogGraph::Path(n),
            'K' => CatalogGraph::Complete(n),
            'Q' => CatalogGraph::Hypercube(n),
            'S' => CatalogGraph::Shattering(n),
            _ => return Err(bad()),
        })
    }
}

/// Structural recognition of cycles and hypercubes, used to pick the
/// sharpest known extremal exponent.
pub fn recognize(g: &Graph) -> Option<CatalogGraph> {
    let n = g.vertex_count();
    if n < 2 || !is_connected(g) {
        return None;
    }
    if n >= 3 && (0..n).all(|v| g.degree(v) == 2) {
        return Some(CatalogGraph::Cycle(n));
    }
    if n.is_power_of_two() {
        let k = n.trailing_zeros() as usize;
        if (0..n).all(|v| g.degree(v) == k) {
            // Same vertex and edge counts, so containment is isomorphism.
            let cube = hypercube_graph(k).ok()?;
            if let Containment::Found(_) = SubgraphSearch::new().run(g, &cube) {
                return Some(CatalogGraph::Hypercube(k));
            }
        }
    }
    None
}

fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_counts() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count(), c4.max_degree()), (4, 4, 2));
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let p2 = path_graph(2).unwrap();
        assert_eq!(p2, complete_graph(2).unwrap());
        assert_eq!(complete_graph(4).unwrap().edge_count(), 6);
        assert_eq!(path_graph(1).unwrap().edge_count(), 0);
        assert!(matches!(cycle_graph(2), Err(GraphError::TooSmall { .. })));
        assert!(matches!(path_graph(0), Err(GraphError::TooSmall { .. })));
    }

    #[test]
    fn hypercubes() {
        assert_eq!(hypercube_graph(1).unwrap(), complete_graph(2).unwrap());
        let q3 = hypercube_graph(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert!((0..8).all(|v| q3.degree(v) == 3));
        assert_eq!(recognize(&hypercube_graph(2).unwrap()), Some(CatalogGraph::Cycle(4)));
        assert!(matches!(hypercube_graph(0), Err(GraphError::TooSmall { .. })));
    }

    #[test]
    fn shattering_graphs() {
        let s1 = shattering_graph(1).unwrap();
        assert_eq!((s1.vertex_count(), s1.edge_count()), (3, 1));
        assert_eq!(s1.isolated_vertices(), vec![1]);
        assert_eq!(shattering_vertex(1, 1), ShatteringVertex::Subset(0));

        // S_2: {1} - 1 - {1,2} - 2 - {2}, plus the empty set.
        let s2 = shattering_graph(2).unwrap();
        assert_eq!((s2.vertex_count(), s2.edge_count()), (6, 4));
        let (index1, index2, set1, set2, set12) = (0, 1, 2 + 0b01, 2 + 0b10, 2 + 0b11);
        for (u, v) in [(set1, index1), (index1, set12), (set12, index2), (index2, set2)] {
            assert!(s2.has_edge(u, v));
        }
        assert_eq!(s2.isolated_vertices(), vec![2]);
        assert_eq!(shattering_graph(3).unwrap().edge_count(), 12);
    }

    #[test]
    fn catalog_names_round_trip() {
        for name in ["C6", "P3", "K2", "Q3", "S2"] {
            let g: CatalogGraph = name.parse().unwrap();
            assert_eq!(g.to_string(), name);
        }
        assert_eq!("c_4".parse::<CatalogGraph>().unwrap(), CatalogGraph::Cycle(4));
        assert!("X3".parse::<CatalogGraph>().is_err());
        assert!("C".parse::<CatalogGraph>().is_err());
    }

    #[test]
    fn recognition() {
        assert_eq!(recognize(&cycle_graph(8).unwrap()), Some(CatalogGraph::Cycle(8)));
        assert_eq!(recognize(&hypercube_graph(4).unwrap()), Some(CatalogGraph::Hypercube(4)));
        assert_eq!(recognize(&shattering_graph(2).unwrap()), None);
        assert_eq!(recognize(&path_graph(4).unwrap()), None);
        // Two disjoint 4-cycles: 2-regular, 8 vertices, not connected.
        let two = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]).unwrap();
        assert_eq!(recognize(&two), None);
    }
}
