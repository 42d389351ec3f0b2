//! Brute-force oracles shared by the integration tests. They use only the
//! public `Graph` accessors and plain enumeration.
#![allow(dead_code)]

use distgraph::graphs::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Tries every injective map `V(pattern) -> V(host)`.
pub fn brute_contains(host: &Graph, pattern: &Graph, induced: bool) -> bool {
    fn extend(host: &Graph, pattern: &Graph, induced: bool, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = map.len();
        if v == pattern.vertex_count() {
            return true;
        }
        for x in 0..host.vertex_count() {
            if used[x] {
                continue;
            }
            let fits = (0..v).all(|u| {
                let p = pattern.has_edge(u, v);
                let h = host.has_edge(map[u], x);
                if induced {
                    p == h
                } else {
                    !p || h
                }
            });
            if fits {
                map.push(x);
                used[x] = true;
                if extend(host, pattern, induced, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    if pattern.vertex_count() > host.vertex_count() {
        return false;
    }
    extend(host, pattern, induced, &mut Vec::new(), &mut vec![false; host.vertex_count()])
}

/// `G(n, p)` with edges visited in lexicographic order.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// `ex(n, G)` by listing every graph on `n` labelled vertices.
pub fn brute_ex(n: usize, pattern: &Graph) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut best = 0;
    for mask in 0u64..1 << pairs.len() {
        let m = mask.count_ones() as usize;
        if m <= best {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !brute_contains(&g, pattern, false) {
            best = m;
        }
    }
    best
}

pub fn euclid(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}
