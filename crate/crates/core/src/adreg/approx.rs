use rayon::prelude::*;

use super::{cantor_product_with, euclid, greedy_net, AdregError, FractalSpec, Net, PointCloud};
use crate::graphs::{Bitset, Containment, Graph, SubgraphSearch};
use crate::limits::Limits;

/// Relative shrink applied to the `10 eps` edge threshold so that pairs
/// sitting on the boundary up to rounding never flip between runs.
pub const GUARD_BAND: f64 = 1.0 - 1.0 / (1u64 << 40) as f64;

/// Graph on the net centers (vertex `i` is `net.centers[i]`) with
/// `x ~ y` iff `||x - y| - t| < 10 eps`.
pub fn approx_distance_graph(cloud: &PointCloud, net: &Net, t: f64) -> Graph {
    let tol = 10.0 * net.epsilon * GUARD_BAND;
    let c = &net.centers;
    let n = c.len();
    let rows: Vec<Bitset> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Bitset::new(n);
            for j in (0..n).filter(|&j| j != i) {
                if (cloud.dist(c[i], c[j]) - t).abs() < tol {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    Graph::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRecord {
    pub epsilon: f64,
    pub centers: usize,
    pub edges: usize,
    pub n_eps_s: f64,
    pub mean_degree: f64,
    pub median_degree: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub s: f64,
    pub t: f64,
    pub records: Vec<ScalingRecord>,
    /// Least-squares slope of `ln e` against `ln(1/eps)`.
    pub slope: f64,
    /// `2s - 1`.
    pub predicted: f64,
    /// `s < 1/2`: edge counts are expected to shrink with `eps`.
    pub below_threshold: bool,
}

pub fn edge_scaling(spec: &FractalSpec, t: f64, eps_list: &[f64]) -> Result<ScalingReport, AdregError> {
    edge_scaling_with(spec, t, eps_list, &Limits::default())
}

/// Builds the cloud once, then a net and approximate distance graph per
/// `eps`, and fits the growth rate of the edge count.
pub fn edge_scaling_with(spec: &FractalSpec, t: f64, eps_list: &[f64], limits: &Limits) -> Result<ScalingReport, AdregError> {
    if eps_list.len() < 3 {
        return Err(AdregError::TooFewScales(eps_list.len()));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(AdregError::BadScale);
    }
    for &eps in eps_list {
        spec.check_epsilon(eps)?;
    }
    let cloud = cantor_product_with(spec, limits)?;
    if cloud.len() < 2 {
        return Err(AdregError::DegenerateFit("cloud is a single point".into()));
    }
    let s = spec.s();
    let mut records = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let net = greedy_net(&cloud, eps, s);
        let h = approx_distance_graph(&cloud, &net, t);
        let mut degrees: Vec<usize> = (0..h.vertex_count()).map(|v| h.degree(v)).collect();
        degrees.sort_unstable();
        records.push(ScalingRecord {
            epsilon: eps,
            centers: net.len(),
            edges: h.edge_count(),
            n_eps_s: net.n_eps_s,
            mean_degree: 2.0 * h.edge_count() as f64 / net.len() as f64,
            median_degree: degrees[degrees.len() / 2],
        });
    }
    if let Some(r) = records.iter().find(|r| r.edges == 0) {
        return Err(AdregError::DegenerateFit(format!("no edges at eps = {}", r.epsilon)));
    }
    let xs: Vec<f64> = records.iter().map(|r| (1.0 / r.epsilon).ln()).collect();
    let ys: Vec<f64> = records.iter().map(|r| (r.edges as f64).ln()).collect();
    let slope = least_squares_slope(&xs, &ys)
        .ok_or_else(|| AdregError::DegenerateFit("epsilon values must not all coincide".into()))?;
    Ok(ScalingReport { s, t, records, slope, predicted: 2.0 * s - 1.0, below_threshold: s < 0.5 })
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Points realizing `G` approximately at distance `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximation {
    /// Cloud index of the point assigned to each vertex of `G`.
    pub indices: Vec<usize>,
    pub points: Vec<Vec<f64>>,
    pub t: f64,
    pub epsilon: f64,
    /// Tolerance on adjacent distances, `10 eps`.
    pub tolerance: f64,
}

/// Looks for `G` in the approximate distance graph of `net` and returns
/// the corresponding points, a `(G, t, 10 eps)`-approximation.
pub fn find_approximation(
    cloud: &PointCloud,
    net: &Net,
    pattern: &Graph,
    t: f64,
    search: &SubgraphSearch,
) -> Result<Option<Approximation>, AdregError> {
    let h = approx_distance_graph(cloud, net, t);
    let embedding = match search.run(&h, pattern) {
        Containment::Found(e) => e,
        Containment::Absent => return Ok(None),
        Containment::BudgetExceeded => return Err(AdregError::BudgetExceeded),
    };
    let indices: Vec<usize> = embedding.map().iter().map(|&v| net.centers[v]).collect();
    let points: Vec<Vec<f64>> = indices.iter().map(|&i| cloud.point(i).to_vec()).collect();
    let tolerance = 10.0 * net.epsilon;
    assert!(
        validate_approximation(&points, pattern, t, tolerance, net.epsilon),
        "net or graph construction produced an invalid approximation"
    );
    Ok(Some(Approximation { indices, points, t, epsilon: net.epsilon, tolerance }))
}

/// `||x_i - x_j| - t| < tol` for every edge `{i, j}` of `G`, and
/// `|x_i - x_j| > 3 eps` for every `i != j`.
pub fn validate_approximation(points: &[Vec<f64>], pattern: &Graph, t: f64, tol: f64, eps: f64) -> bool {
    let m = points.len();
    if m != pattern.vertex_count() {
        return false;
    }
    let adjacent_ok = pattern.edges().all(|(i, j)| (euclid(&points[i], &points[j]) - t).abs() < tol);
    let separated = (0..m).all(|i| (i + 1..m).all(|j| euclid(&points[i], &points[j]) > 3.0 * eps));
    adjacent_ok && separated
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph};

    #[test]
    fn far_target_gives_no_edges() {
        let spec = FractalSpec::new(2, 0.45, 5).unwrap();
        let c = cantor_product_with(&spec, &Limits::default()).unwrap();
        let net = greedy_net(&c, 0.02, spec.s());
        let h = approx_distance_graph(&c, &net, c.diameter() + 0.2 + 1e-9);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn exact_distance_is_adjacent() {
        let c = PointCloud::from_points(1, &[vec![0.0], vec![0.5], vec![1.0]]).unwrap();
        let net = greedy_net(&c, 0.01, 1.0);
        assert_eq!(net.len(), 3);
        let h = approx_distance_graph(&c, &net, 0.5);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2) && !h.has_edge(0, 2));
    }

    #[test]
    fn guard_band_rejects_the_boundary() {
        // |1.0 - 0.9| = 10 * 0.01 sits exactly on the threshold.
        let c = PointCloud::from_points(1, &[vec![0.0], vec![1.0]]).unwrap();
        let net = greedy_net(&c, 0.01, 1.0);
        assert_eq!(approx_distance_graph(&c, &net, 0.9).edge_count(), 0);
        assert_eq!(approx_distance_graph(&c, &net, 0.9001).edge_count(), 1);
    }

    #[test]
    fn k2_approximation_is_any_edge() {
        let spec = FractalSpec::new(2, 0.45, 5).unwrap();
        let c = cantor_product_with(&spec, &Limits::default()).unwrap();
        let net = greedy_net(&c, 0.03, spec.s());
        let k2 = complete_graph(2).unwrap();
        let a = find_approximation(&c, &net, &k2, 0.5, &SubgraphSearch::new()).unwrap().unwrap();
        assert!(validate_approximation(&a.points, &k2, 0.5, a.tolerance, a.epsilon));
    }

    #[test]
    fn validator_rejects_bad_tuples() {
        let c4 = cycle_graph(4).unwrap();
        let square = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(validate_approximation(&square, &c4, 1.0, 0.1, 0.01));
        assert!(!validate_approximation(&square, &c4, 1.2, 0.1, 0.01));
        // Separation fails once 3 eps exceeds the side.
        assert!(!validate_approximation(&square, &c4, 1.0, 0.1, 0.4));
        assert!(!validate_approximation(&square[..3], &c4, 1.0, 0.1, 0.01));
    }

    #[test]
    fn scaling_errors() {
        let spec = FractalSpec::new(2, 0.45, 5).unwrap();
        assert_eq!(edge_scaling(&spec, 0.5, &[0.1, 0.05]), Err(AdregError::TooFewScales(2)));
        assert!(matches!(edge_scaling(&spec, 0.5, &[0.1, 0.05, 0.001]), Err(AdregError::EpsilonBelowCellScale { .. })));
        let point = FractalSpec::new(2, 0.45, 0).unwrap();
        assert!(matches!(edge_scaling(&point, 0.5, &[8.0, 5.0, 4.0]), Err(AdregError::DegenerateFit(_))));
    }

    #[test]
    fn slope_of_a_line() {
        assert_eq!(least_squares_slope(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]), Some(2.0));
        assert_eq!(least_squares_slope(&[1.0, 1.0], &[2.0, 4.0]), None);
    }
}
