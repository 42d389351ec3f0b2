use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{ExtremalError, ExtremalResult};
use crate::graphs::{Containment, Graph, SubgraphSearch};
use crate::limits::Limits;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u128) -> Graph {
    let mut g = Graph::empty(n);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

fn is_free(host: &Graph, pattern: &Graph) -> bool {
    SubgraphSearch::new().run(host, pattern) == Containment::Absent
}

/// Next integer with the same popcount (Gosper's hack).
fn next_same_popcount(x: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// `ex(n, G)` by scanning labeled graphs from `C(n, 2)` edges downwards;
/// the first edge count with a `G`-free graph is the answer. Within a
/// level masks are scanned in increasing order, so the witness is the
/// numerically smallest `G`-free edge mask (bit `i` = `i`-th pair in
/// lexicographic order).
pub fn ex_exhaustive(n: usize, pattern: &Graph) -> Result<ExtremalResult, ExtremalError> {
    ex_exhaustive_with(n, pattern, &Limits::default())
}

pub fn ex_exhaustive_with(n: usize, pattern: &Graph, limits: &Limits) -> Result<ExtremalResult, ExtremalError> {
    if pattern.edge_count() == 0 {
        return Err(ExtremalError::EmptyPattern);
    }
    let cap = limits.max_exhaustive_n.min(11);
    if n > cap {
        return Err(ExtremalError::TooLarge { n, cap });
    }
    let pairs = pairs(n);
    let total = pairs.len();
    const CHUNK: usize = 1 << 14;
    for m in (0..=total).rev() {
        let mut mask = if m == 0 { 0 } else { (1u64 << m) - 1 };
        let limit = if total == 64 { u64::MAX } else { (1u64 << total) - 1 };
        loop {
            let mut chunk = Vec::with_capacity(CHUNK);
            let mut exhausted = false;
            while chunk.len() < CHUNK {
                chunk.push(mask);
                match next_same_popcount(mask).filter(|&next| m > 0 && next <= limit) {
                    Some(next) => mask = next,
                    _ => {
                        exhausted = true;
                        break;
                    }
                }
            }
            let hit = chunk
                .par_iter()
                .find_first(|&&mask| is_free(&graph_from_mask(n, &pairs, mask as u128), pattern));
            if let Some(&mask) = hit {
                let witness = graph_from_mask(n, &pairs, mask as u128);
                return Ok(ExtremalResult { n, pattern: pattern.clone(), value: m, witness });
            }
            if exhausted {
                break;
            }
        }
    }
    unreachable!("the empty graph is G-free for any pattern with an edge")
}

/// Options for [`ex_branch_bound_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchBound {
    /// Node cap per top-level subtree.
    pub budget: Option<u64>,
    /// Number of leading edge decisions fixed per parallel task.
    pub split_depth: usize,
}

impl Default for BranchBound {
    fn default() -> Self {
        BranchBound { budget: Some(50_000_000), split_depth: 4 }
    }
}

pub fn ex_branch_bound(n: usize, pattern: &Graph) -> Result<ExtremalResult, ExtremalError> {
    ex_branch_bound_with(n, pattern, &BranchBound::default(), &Limits::default())
}

/// `ex(n, G)` by branch and bound over edges in lexicographic order,
/// include-branch first. Adding an edge only needs the copies of `G` that
/// use it, so the freeness check pins one pattern edge (one per edge orbit
/// of `Aut(G)`, both orientations) onto the new host edge. A subtree is cut
/// when `edges so far + edges left <= best`.
///
/// The first `split_depth` decisions are fanned out over rayon. Tasks share
/// the best value seen so far but only prune on it strictly, so each task
/// still finds its own first optimal leaf and the reported witness (from the
/// first task, in branch order, that reaches the maximum) is deterministic.
pub fn ex_branch_bound_with(
    n: usize,
    pattern: &Graph,
    opts: &BranchBound,
    limits: &Limits,
) -> Result<ExtremalResult, ExtremalError> {
    if pattern.edge_count() == 0 {
        return Err(ExtremalError::EmptyPattern);
    }
    let cap = limits.max_branch_bound_n.min(16);
    if n > cap {
        return Err(ExtremalError::TooLarge { n, cap });
    }
    let pairs = pairs(n);
    let anchors = edge_orbit_representatives(pattern);
    let depth = opts.split_depth.min(pairs.len());

    // Enumerate feasible prefixes in branch order (include before exclude).
    let mut prefixes: Vec<(Graph, usize)> = vec![(Graph::empty(n), 0)];
    for &(u, v) in &pairs[..depth] {
        let mut next = Vec::with_capacity(prefixes.len() * 2);
        for (g, count) in prefixes {
            let mut with = g.clone();
            with.add_edge(u, v);
            if !closes_copy(&with, pattern, &anchors, u, v) {
                next.push((with, count + 1));
            }
            next.push((g, count));
        }
        prefixes = next;
    }

    let shared = AtomicUsize::new(0);
    let outcomes: Vec<Result<Option<(usize, Graph)>, ExtremalError>> = prefixes
        .into_par_iter()
        .map(|(graph, count)| {
            let mut task = Task {
                pattern,
                anchors: &anchors,
                pairs: &pairs,
                graph,
                best: None,
                shared: &shared,
                nodes: 0,
                budget: opts.budget,
            };
            task.dfs(depth, count)?;
            // `None` when the shared bound cut the whole subtree.
            Ok(task.best)
        })
        .collect();

    let mut best: Option<(usize, Graph)> = None;
    for outcome in outcomes {
        let Some((value, witness)) = outcome? else { continue };
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, witness));
        }
    }
    let (value, witness) = best.expect("the first task is never cut by the shared bound");
    Ok(ExtremalResult { n, pattern: pattern.clone(), value, witness })
}

/// One edge per orbit of `Aut(G)` acting on unordered edges. An
/// automorphism of `G` is an embedding of `G` into itself, so orbit
/// membership is a pinned self-search.
fn edge_orbit_representatives(pattern: &Graph) -> Vec<(usize, usize)> {
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for (a, b) in pattern.edges() {
        let covered = reps.iter().any(|&(x, y)| {
            let s = SubgraphSearch::new();
            s.run_pinned(pattern, pattern, &[(x, a), (y, b)]).is_found()
                || s.run_pinned(pattern, pattern, &[(x, b), (y, a)]).is_found()
        });
        if !covered {
            reps.push((a, b));
        }
    }
    reps
}

/// Whether `host` (which contains `{u, v}`) has a copy of `G` using that edge.
fn closes_copy(host: &Graph, pattern: &Graph, anchors: &[(usize, usize)], u: usize, v: usize) -> bool {
    let s = SubgraphSearch::new();
    anchors.iter().any(|&(a, b)| {
        s.run_pinned(host, pattern, &[(a, u), (b, v)]).is_found() || s.run_pinned(host, pattern, &[(a, v), (b, u)]).is_found()
    })
}

struct Task<'a> {
    pattern: &'a Graph,
    anchors: &'a [(usize, usize)],
    pairs: &'a [(usize, usize)],
    graph: Graph,
    best: Option<(usize, Graph)>,
    shared: &'a AtomicUsize,
    nodes: u64,
    budget: Option<u64>,
}

impl Task<'_> {
    fn dfs(&mut self, i: usize, count: usize) -> Result<(), ExtremalError> {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                return Err(ExtremalError::BudgetExceeded { budget });
            }
        }
        let bound = count + (self.pairs.len() - i);
        if let Some((local, _)) = &self.best {
            if bound <= *local {
                return Ok(());
            }
        }
        if bound < self.shared.load(Ordering::Relaxed) {
            return Ok(());
        }
        if i == self.pairs.len() {
            self.best = Some((count, self.graph.clone()));
            self.shared.fetch_max(count, Ordering::Relaxed);
            return Ok(());
        }
        let (u, v) = self.pairs[i];
        self.graph.add_edge(u, v);
        if !closes_copy(&self.graph, self.pattern, self.anchors, u, v) {
            self.dfs(i + 1, count + 1)?;
        }
        self.graph.remove_edge(u, v);
        self.dfs(i + 1, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, path_graph};

    #[test]
    fn gosper_walks_a_level() {
        let mut x = 0b0111u64;
        let mut seen = vec![x];
        while let Some(n) = next_same_popcount(x) {
            if n >= 1 << 5 {
                break;
            }
            seen.push(n);
            x = n;
        }
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_exhaustive_values() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(ex_exhaustive(3, &c4).unwrap().value, 3);
        assert_eq!(ex_exhaustive(4, &c4).unwrap().value, 4);
        let k2 = complete_graph(2).unwrap();
        for n in 0..6 {
            assert_eq!(ex_exhaustive(n, &k2).unwrap().value, 0);
        }
    }

    #[test]
    fn branch_bound_matches_on_small_cases() {
        for g in [cycle_graph(4).unwrap(), path_graph(3).unwrap(), cycle_graph(6).unwrap()] {
            for n in 1..=6 {
                let a = ex_exhaustive(n, &g).unwrap();
                let b = ex_branch_bound(n, &g).unwrap();
                assert_eq!(a.value, b.value, "n={n} {g:?}");
                assert!(a.verify() && b.verify());
            }
        }
    }

    #[test]
    fn pattern_bigger_than_host() {
        let c6 = cycle_graph(6).unwrap();
        assert_eq!(ex_branch_bound(5, &c6).unwrap().value, 10);
        assert_eq!(ex_exhaustive(5, &c6).unwrap().value, 10);
    }

    #[test]
    fn degenerate_inputs() {
        let single = path_graph(1).unwrap();
        assert_eq!(ex_branch_bound(4, &single).unwrap_err(), ExtremalError::EmptyPattern);
        assert_eq!(ex_exhaustive(4, &single).unwrap_err(), ExtremalError::EmptyPattern);
        let c4 = cycle_graph(4).unwrap();
        assert!(matches!(ex_exhaustive(9, &c4), Err(ExtremalError::TooLarge { n: 9, .. })));
        assert!(matches!(ex_branch_bound(13, &c4), Err(ExtremalError::TooLarge { n: 13, .. })));
    }

    #[test]
    fn budget_is_an_error_not_a_value() {
        let opts = BranchBound { budget: Some(5), split_depth: 0 };
        let c4 = cycle_graph(4).unwrap();
        assert!(matches!(
            ex_branch_bound_with(7, &c4, &opts, &Limits::default()),
            Err(ExtremalError::BudgetExceeded { budget: 5 })
        ));
    }

    #[test]
    fn witness_is_deterministic() {
        let c4 = cycle_graph(4).unwrap();
        let a = ex_branch_bound(6, &c4).unwrap();
        let b = ex_branch_bound(6, &c4).unwrap();
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn orbit_representatives() {
        assert_eq!(edge_orbit_representatives(&cycle_graph(6).unwrap()).len(), 1);
        // P_4 has two edge orbits: the ends and the middle.
        assert_eq!(edge_orbit_representatives(&path_graph(4).unwrap()).len(), 2);
    }
}
