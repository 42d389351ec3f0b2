//! Exact ex(n, G) and the threshold exponent for a few patterns.

use distgraph::extremal::{best_known_exponent, ex_branch_bound, ex_exhaustive, threshold_exponent};
use distgraph::graphs::{cycle_graph, hypercube_graph};

fn main() {
    let c4 = cycle_graph(4).unwrap();
    for n in 1..=7 {
        let a = ex_exhaustive(n, &c4).unwrap();
        let b = ex_branch_bound(n, &c4).unwrap();
        assert_eq!(a.value, b.value);
        println!("ex({n}, C4) = {} (witness verified: {})", b.value, b.verify());
    }
    let best = ex_branch_bound(7, &c4).unwrap();
    println!("witness edges: {}", best.witness.edge_list_string());

    for g in [c4, cycle_graph(6).unwrap(), hypercube_graph(3).unwrap()] {
        let info = best_known_exponent(&g).unwrap();
        for d in [2, 3] {
            let t = threshold_exponent(&g, d).unwrap();
            println!("{}: alpha={} ({}) d={d} s*={} binding={:?}", g.edge_list_string(), info.alpha, info.source, t.s_star, t.binding);
        }
    }
}
