use rayon::prelude::*;

use super::histogram::{distance_histogram_with, NormKernel};
use super::{GeomError, PointSet};
use crate::field::FieldElement;
use crate::graphs::{Bitset, Containment, Graph, SubgraphSearch};
use crate::limits::Limits;

/// The `t`-distance graph on the indices of `set`: `{i, j}` is an edge iff
/// `i != j` and `||x_i - x_j|| = t`.
pub fn distance_graph(set: &PointSet, t: FieldElement) -> Graph {
    assert!(set.field().contains(t), "element from another field");
    let target = t.index() as u16;
    let n = set.len();
    let kernel = NormKernel::new(set.field());
    let rows: Vec<Bitset> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Bitset::new(n);
            let x = set.raw(i);
            for j in (0..n).filter(|&j| j != i) {
                if kernel.distance(x, set.raw(j)) == target {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    Graph::from_rows(rows)
}

/// Containment outcome for one distance `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Point indices of a copy of `G`, indexed by vertex of `G`.
    Contained(Vec<usize>),
    Absent,
    /// The search budget ran out before a proof either way.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVerdict {
    pub t: FieldElement,
    pub edges: u64,
    pub verdict: Verdict,
}

/// Whether `Delta_G(E)` contains every nonzero `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Full,
    Partial,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDistanceSet {
    /// One entry per `t`, in field enumeration order (`t = 0` first).
    pub per_t: Vec<DistanceVerdict>,
}

impl GraphDistanceSet {
    /// `Delta_G(E)`: the `t` whose distance graph contains `G`.
    pub fn members(&self) -> Vec<FieldElement> {
        self.per_t.iter().filter(|v| matches!(v.verdict, Verdict::Contained(_))).map(|v| v.t).collect()
    }

    pub fn coverage(&self) -> Coverage {
        let nonzero = || self.per_t.iter().filter(|v| !v.t.is_zero());
        if nonzero().any(|v| v.verdict == Verdict::Absent) {
            Coverage::Partial
        } else if nonzero().any(|v| v.verdict == Verdict::Indeterminate) {
            Coverage::Indeterminate
        } else {
            Coverage::Full
        }
    }

    pub fn covers_nonzero(&self) -> bool {
        self.coverage() == Coverage::Full
    }
}

/// `Delta_G(E) = {t : distance_graph(E, t) contains G}`, evaluated for every
/// `t` in the field (zero included; coverage ignores it).
pub fn graph_distance_set(
    set: &PointSet,
    pattern: &Graph,
    search: &SubgraphSearch,
    limits: &Limits,
) -> Result<GraphDistanceSet, GeomError> {
    let hist = distance_histogram_with(set, limits)?;
    let field = set.field();
    let pattern_edges = pattern.edge_count() as u64;
    let per_t = field
        .enumerate()
        .into_par_iter()
        .map(|t| {
            let edges = hist.edges_at(t);
            let verdict = if pattern.vertex_count() > set.len() || edges < pattern_edges {
                Verdict::Absent
            } else {
                let host = distance_graph(set, t);
                match search.run(&host, pattern) {
                    Containment::Found(e) => Verdict::Contained(e.map().to_vec()),
                    Containment::Absent => Verdict::Absent,
                    Containment::BudgetExceeded => Verdict::Indeterminate,
                }
            };
            DistanceVerdict { t, edges, verdict }
        })
        .collect();
    Ok(GraphDistanceSet { per_t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffgeom::{all_points, distance_histogram};
    use crate::field::make_field;
    use crate::graphs::{complete_graph, cycle_graph};

    #[test]
    fn unit_circle_graph_on_f3_plane() {
        let f3 = make_field(3, 1).unwrap();
        let e = all_points(&f3, 2).unwrap();
        let g = distance_graph(&e, f3.one());
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 18));
        assert!((0..9).all(|v| g.degree(v) == 4));
        // Only z = 0 has norm 0 in F_3^2.
        assert_eq!(distance_graph(&e, f3.zero()).edge_count(), 0);
    }

    #[test]
    fn unit_square_is_a_four_cycle() {
        let f3 = make_field(3, 1).unwrap();
        let pt = |a, b| f3.point(vec![f3.from_int(a), f3.from_int(b)]).unwrap();
        let e = PointSet::new(&f3, 2, &[pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap();
        let g = distance_graph(&e, f3.one());
        let c4 = cycle_graph(4).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(2, 3) && g.has_edge(3, 0));
        let found = SubgraphSearch::new().run(&g, &c4);
        assert!(found.witness().unwrap().verify(&g, &c4, false));
    }

    #[test]
    fn k2_distance_set_of_f3_plane() {
        let f3 = make_field(3, 1).unwrap();
        let e = all_points(&f3, 2).unwrap();
        let ds = graph_distance_set(&e, &complete_graph(2).unwrap(), &SubgraphSearch::new(), &Limits::default()).unwrap();
        assert_eq!(ds.members(), vec![f3.one(), f3.from_int(2)]);
        assert!(ds.covers_nonzero());
        let hist = distance_histogram(&e).unwrap();
        for v in &ds.per_t {
            assert_eq!(v.edges, hist.edges_at(v.t));
        }
    }

    #[test]
    fn pattern_larger_than_set() {
        let f5 = make_field(5, 1).unwrap();
        let e = all_points(&f5, 2).unwrap().subset(&[0, 1, 2]);
        let ds = graph_distance_set(&e, &cycle_graph(4).unwrap(), &SubgraphSearch::new(), &Limits::default()).unwrap();
        assert!(ds.members().is_empty());
        assert_eq!(ds.coverage(), Coverage::Partial);
    }

    #[test]
    fn budget_exhaustion_is_indeterminate() {
        let f5 = make_field(5, 1).unwrap();
        let e = all_points(&f5, 2).unwrap();
        let search = SubgraphSearch::new().budget(Some(1));
        let ds = graph_distance_set(&e, &cycle_graph(6).unwrap(), &search, &Limits::default()).unwrap();
        assert!(ds.per_t.iter().any(|v| v.verdict == Verdict::Indeterminate));
        assert_ne!(ds.coverage(), Coverage::Full);
    }
}
