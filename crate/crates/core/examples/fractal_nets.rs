//! Cantor-product clouds, greedy nets, annulus masses, edge scaling and
//! approximate copies of a 6-cycle.

use distgraph::adreg::{annulus_stats, cantor_product, edge_scaling, find_approximation, greedy_net, AnnulusBand, FractalSpec};
use distgraph::graphs::{cycle_graph, SubgraphSearch};

fn main() {
    let spec = FractalSpec::new(2, 0.45, 8).unwrap();
    let cloud = cantor_product(&spec).unwrap();
    let diam = cloud.diameter();
    println!("{} points, s = {:.4}, diameter {:.4}", cloud.len(), spec.s(), diam);

    let t = 0.5 * diam;
    let c6 = cycle_graph(6).unwrap();
    for k in 4..=6 {
        let eps = diam / 2f64.powi(k);
        let net = greedy_net(&cloud, eps, spec.s());
        let check = net.verify(&cloud);
        let centers = net.points(&cloud);
        let annulus = annulus_stats(&cloud, &centers, t, eps, AnnulusBand::default());
        let approx = find_approximation(&cloud, &net, &c6, t, &SubgraphSearch::new()).unwrap();
        println!(
            "eps=diam/2^{k}: {} centers, N*eps^s={:.3}, net ok={}, annulus fraction={:.2}, C6 approx={}",
            net.len(),
            net.n_eps_s,
            check.ok(),
            annulus.qualifying_fraction,
            approx.is_some()
        );
    }

    let eps: Vec<f64> = (5..=8).map(|k| diam / 2f64.powi(k)).collect();
    let deeper = FractalSpec::new(2, 0.45, 10).unwrap();
    let r = edge_scaling(&deeper, t, &eps).unwrap();
    println!("edge slope {:.3} vs predicted {:.3}", r.slope, r.predicted);
}
