//! Distance histograms, the remainder check and a C4-distance set in F_7^2.

use distgraph::ffgeom::{graph_distance_set, ir_check, random_subset, Verdict};
use distgraph::field::make_field;
use distgraph::graphs::{cycle_graph, SubgraphSearch};
use distgraph::Limits;

fn main() {
    let f = make_field(7, 1).unwrap();
    let set = random_subset(&f, 2, 20, 1).unwrap();
    let report = ir_check(&set).unwrap();
    println!("|E| = {} in F_7^2, remainder check pass = {}", report.set_size, report.pass);
    for r in &report.records {
        println!("  t={} nu={} main={:.2} bound={:.2} within={}", f.format(r.t), r.nu, f64_of(r.main_term), r.bound, r.within_bound);
    }

    let c4 = cycle_graph(4).unwrap();
    let gds = graph_distance_set(&set, &c4, &SubgraphSearch::new(), &Limits::default()).unwrap();
    for v in &gds.per_t {
        let verdict = match &v.verdict {
            Verdict::Contained(idx) => format!("contains C4 at {idx:?}"),
            other => format!("{other:?}"),
        };
        println!("  t={} edges={} {verdict}", f.format(v.t), v.edges);
    }
    println!("coverage: {:?}", gds.coverage());
}

fn f64_of(r: num_rational::Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
