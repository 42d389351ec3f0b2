//! Backtracking subgraph containment.
//!
//! Pattern vertices are placed in a fixed order: pinned vertices first, then
//! repeatedly the unplaced vertex with the most already-placed neighbours
//! (ties: higher degree, then lower index). When no unplaced vertex touches
//! the placed set a new component starts at its highest-degree vertex, so
//! isolated vertices come last. Candidates for a vertex are the
//! intersection of the host rows of its placed neighbours' images, minus
//! used host vertices, filtered by host degree. The induced variant also
//! removes host neighbours of placed non-neighbours' images.
//!
//! Candidates are tried in increasing host index, so witnesses are
//! deterministic.

use super::{Bitset, Graph};

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    /// Independent check: injective, edge-preserving and, when `induced`,
    /// non-edge-preserving.
    pub fn verify(&self, host: &Graph, pattern: &Graph, induced: bool) -> bool {
        let n = pattern.vertex_count();
        if self.map.len() != n || self.map.iter().any(|&x| x >= host.vertex_count()) {
            return false;
        }
        let mut seen = vec![false; host.vertex_count()];
        for &x in &self.map {
            if std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let pe = pattern.has_edge(u, v);
                let he = host.has_edge(self.map[u], self.map[v]);
                if pe && !he || induced && !pe && he {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of a containment search. `Absent` is a proof; a search that ran
/// out of budget reports `BudgetExceeded` instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Found(Embedding),
    Absent,
    BudgetExceeded,
}

impl Containment {
    pub fn is_found(&self) -> bool {
        matches!(self, Containment::Found(_))
    }

    pub fn witness(&self) -> Option<&Embedding> {
        match self {
            Containment::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// Search options. `budget` caps the number of candidate assignments tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SubgraphSearch {
    induced: bool,
    budget: Option<u64>,
}

/// Does `host` contain a (not necessarily induced) copy of `pattern`?
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Containment {
    SubgraphSearch::new().run(host, pattern)
}

pub fn contains_induced_subgraph(host: &Graph, pattern: &Graph) -> Containment {
    SubgraphSearch::new().induced(true).run(host, pattern)
}

impl SubgraphSearch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn induced(mut self, induced: bool) -> Self {
        self.induced = induced;
        self
    }

    pub fn budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn is_induced(&self) -> bool {
        self.induced
    }

    pub fn run(&self, host: &Graph, pattern: &Graph) -> Containment {
        self.run_pinned(host, pattern, &[])
    }

    /// Searches only embeddings extending the given `(pattern, host)` pairs.
    pub fn run_pinned(&self, host: &Graph, pattern: &Graph, pins: &[(usize, usize)]) -> Containment {
        let (pn, hn) = (pattern.vertex_count(), host.vertex_count());
        if pn > hn || !self.induced && pattern.edge_count() > host.edge_count() {
            return Containment::Absent;
        }
        if pn == 0 {
            return Containment::Found(Embedding::new(Vec::new()));
        }
        if pattern.max_degree() > host.max_degree() {
            return Containment::Absent;
        }

        let mut map = vec![usize::MAX; pn];
        let mut used = Bitset::new(hn);
        for &(u, x) in pins {
            if u >= pn || x >= hn || map[u] != usize::MAX || used.contains(x) || host.degree(x) < pattern.degree(u) {
                return Containment::Absent;
            }
            map[u] = x;
            used.insert(x);
        }
        for &(u, x) in pins {
            for &(v, y) in pins {
                if u < v {
                    let (pe, he) = (pattern.has_edge(u, v), host.has_edge(x, y));
                    if pe && !he || self.induced && !pe && he {
                        return Containment::Absent;
                    }
                }
            }
        }

        let pinned: Vec<usize> = pins.iter().map(|&(u, _)| u).collect();
        let plan = Plan::new(pattern, &pinned);
        let host_degree: Vec<usize> = (0..hn).map(|v| host.degree(v)).collect();
        let mut state = State {
            host,
            plan: &plan,
            host_degree,
            induced: self.induced,
            budget: self.budget,
            expansions: 0,
            map,
            used,
            scratch: vec![Bitset::new(hn); pn],
        };
        match state.extend(pinned.len()) {
            Step::Done => Containment::Found(Embedding::new(state.map)),
            Step::Exhausted => Containment::Absent,
            Step::OutOfBudget => Containment::BudgetExceeded,
        }
    }
}

struct Plan {
    order: Vec<usize>,
    /// For each position, pattern vertices placed earlier that are adjacent.
    back_neighbors: Vec<Vec<usize>>,
    /// For each position, earlier pattern vertices that are not adjacent.
    back_non_neighbors: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(pattern: &Graph, pinned: &[usize]) -> Plan {
        let n = pattern.vertex_count();
        let degree: Vec<usize> = (0..n).map(|v| pattern.degree(v)).collect();
        let mut placed = vec![false; n];
        let mut touching = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let place = |v: usize, order: &mut Vec<usize>, placed: &mut Vec<bool>, touching: &mut Vec<usize>| {
            placed[v] = true;
            order.push(v);
            for w in pattern.neighbors(v) {
                touching[w] += 1;
            }
        };
        for &v in pinned {
            place(v, &mut order, &mut placed, &mut touching);
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (touching[v], degree[v], std::cmp::Reverse(v)))
                .unwrap();
            place(next, &mut order, &mut placed, &mut touching);
        }
        let mut back_neighbors = Vec::with_capacity(n);
        let mut back_non_neighbors = Vec::with_capacity(n);
        for (i, &v) in order.iter().enumerate() {
            let (adj, non): (Vec<usize>, Vec<usize>) = order[..i].iter().partition(|&&w| pattern.has_edge(v, w));
            back_neighbors.push(adj);
            back_non_neighbors.push(non);
        }
        Plan { order, back_neighbors, back_non_neighbors, degree }
    }
}

enum Step {
    Done,
    Exhausted,
    OutOfBudget,
}

struct State<'a> {
    host: &'a Graph,
    plan: &'a Plan,
    host_degree: Vec<usize>,
    induced: bool,
    budget: Option<u64>,
    expansions: u64,
    map: Vec<usize>,
    used: Bitset,
    scratch: Vec<Bitset>,
}

impl State<'_> {
    fn extend(&mut self, pos: usize) -> Step {
        if pos == self.plan.order.len() {
            return Step::Done;
        }
        let u = self.plan.order[pos];
        let mut cand = std::mem::replace(&mut self.scratch[pos], Bitset::new(0));
        let back = &self.plan.back_neighbors[pos];
        if let Some((&first, rest)) = back.split_first() {
            cand.copy_from(self.host.row(self.map[first]));
            for &w in rest {
                cand.intersect_with(self.host.row(self.map[w]));
            }
        } else {
            cand.copy_from(&Bitset::full(self.host.vertex_count()));
        }
        cand.difference_with(&self.used);
        if self.induced {
            for &w in &self.plan.back_non_neighbors[pos] {
                cand.difference_with(self.host.row(self.map[w]));
            }
        }

        let need = self.plan.degree[u];
        let mut result = Step::Exhausted;
        for x in cand.ones() {
            if self.host_degree[x] < need {
                continue;
            }
            self.expansions += 1;
            if self.budget.is_some_and(|b| self.expansions > b) {
                result = Step::OutOfBudget;
                break;
            }
            self.map[u] = x;
            self.used.insert(x);
            match self.extend(pos + 1) {
                Step::Exhausted => {}
                other => {
                    result = other;
                    break;
                }
            }
            self.used.remove(x);
            self.map[u] = usize::MAX;
        }
        self.scratch[pos] = cand;
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, hypercube_graph, path_graph, shattering_graph};

    fn found(c: Containment, host: &Graph, pattern: &Graph, induced: bool) {
        let e = c.witness().expect("expected a witness").clone();
        assert!(e.verify(host, pattern, induced));
    }

    #[test]
    fn path_in_cycle() {
        let (h, g) = (cycle_graph(4).unwrap(), path_graph(3).unwrap());
        found(contains_subgraph(&h, &g), &h, &g, false);
        found(contains_induced_subgraph(&h, &g), &h, &g, true);
    }

    #[test]
    fn c4_not_in_c6() {
        let (h, g) = (cycle_graph(6).unwrap(), cycle_graph(4).unwrap());
        assert_eq!(contains_subgraph(&h, &g), Containment::Absent);
    }

    #[test]
    fn c6_in_cube() {
        let (h, g) = (hypercube_graph(3).unwrap(), cycle_graph(6).unwrap());
        found(contains_subgraph(&h, &g), &h, &g, false);
    }

    #[test]
    fn induced_path_not_in_clique() {
        let (h, g) = (complete_graph(4).unwrap(), path_graph(3).unwrap());
        assert!(contains_subgraph(&h, &g).is_found());
        assert_eq!(contains_induced_subgraph(&h, &g), Containment::Absent);
    }

    #[test]
    fn shattering_with_extra_edge() {
        // Index 1 (vertex 0) joined to the subset {2,3} (vertex 3 + 0b110).
        let s3 = shattering_graph(3).unwrap();
        let mut bad = s3.clone();
        bad.add_edge(0, 3 + 0b110);
        found(contains_subgraph(&bad, &s3), &bad, &s3, false);
        assert_eq!(contains_induced_subgraph(&bad, &s3), Containment::Absent);
    }

    #[test]
    fn isolated_vertices_need_room() {
        let s1 = shattering_graph(1).unwrap();
        let k2 = complete_graph(2).unwrap();
        assert_eq!(contains_subgraph(&k2, &s1), Containment::Absent);
        let host = Graph::from_edges(3, &[(1, 2)]).unwrap();
        found(contains_subgraph(&host, &s1), &host, &s1, false);
    }

    #[test]
    fn budget_is_reported_separately() {
        let h = cycle_graph(12).unwrap();
        let g = cycle_graph(4).unwrap();
        let out = SubgraphSearch::new().budget(Some(3)).run(&h, &g);
        assert_eq!(out, Containment::BudgetExceeded);
        assert_eq!(SubgraphSearch::new().run(&h, &g), Containment::Absent);
    }

    #[test]
    fn pinned_search_respects_pins() {
        let h = cycle_graph(4).unwrap();
        let g = complete_graph(2).unwrap();
        let e = SubgraphSearch::new().run_pinned(&h, &g, &[(0, 2), (1, 3)]);
        assert_eq!(e.witness().unwrap().map(), &[2, 3]);
        assert_eq!(SubgraphSearch::new().run_pinned(&h, &g, &[(0, 0), (1, 2)]), Containment::Absent);
    }

    #[test]
    fn verify_rejects_bad_maps() {
        let h = cycle_graph(4).unwrap();
        let g = path_graph(3).unwrap();
        assert!(!Embedding::new(vec![0, 1, 1]).verify(&h, &g, false));
        assert!(!Embedding::new(vec![0, 2, 1]).verify(&h, &g, false));
        assert!(Embedding::new(vec![0, 1, 2]).verify(&h, &g, true));
        assert!(!Embedding::new(vec![0, 1]).verify(&h, &g, false));
    }
}
