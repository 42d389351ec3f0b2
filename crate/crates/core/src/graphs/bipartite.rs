use std::collections::VecDeque;

use super::{Graph, GraphError};

/// The two color classes of one connected component.
pub type Coloring = (Vec<usize>, Vec<usize>);

/// A split of the vertices into two independent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub part_x: Vec<usize>,
    pub part_y: Vec<usize>,
}

/// Two-colors each connected component by BFS, starting every component at
/// its lowest vertex with color 0. Returns `(color 0, color 1)` per
/// component, components ordered by lowest vertex.
pub fn component_colorings(g: &Graph) -> Result<Vec<Coloring>, GraphError> {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if color[v] == 0 {
                even.push(v);
            } else {
                odd.push(v);
            }
            for w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return Err(GraphError::NotBipartite);
                }
            }
        }
        even.sort_unstable();
        odd.sort_unstable();
        out.push((even, odd));
    }
    Ok(out)
}

pub fn bipartition(g: &Graph) -> Result<Bipartition, GraphError> {
    let mut part_x = Vec::new();
    let mut part_y = Vec::new();
    for (even, odd) in component_colorings(g)? {
        part_x.extend(even);
        part_y.extend(odd);
    }
    part_x.sort_unstable();
    part_y.sort_unstable();
    Ok(Bipartition { part_x, part_y })
}

/// Smallest achievable `max_{v in X} deg(v)` over all bipartitions, where
/// each component's color classes may be swapped independently.
pub fn min_side_max_degree(g: &Graph) -> Result<usize, GraphError> {
    let comps = component_colorings(g)?;
    if g.edge_count() == 0 {
        return Err(GraphError::NoEdges);
    }
    let side_max = |side: &[usize]| side.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
    Ok(comps.iter().map(|(a, b)| side_max(a).min(side_max(b))).max().unwrap_or(0))
}
