use rayon::prelude::*;

use super::{euclid, PointCloud};

/// Band `[c1 eps, c2 eps]` a center's annulus mass must fall in to qualify.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AnnulusBand {
    pub c1: f64,
    pub c2: f64,
}

impl Default for AnnulusBand {
    fn default() -> Self {
        AnnulusBand { c1: 0.25, c2: 4.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnulusStats {
    pub t: f64,
    pub epsilon: f64,
    /// `mu(A_{t,eps}(x))` per center, in the order given.
    pub masses: Vec<f64>,
    /// Minimum, quartiles and maximum of `masses`.
    pub quantiles: [f64; 5],
    pub band: AnnulusBand,
    /// Share of centers whose mass lies in the band.
    pub qualifying_fraction: f64,
}

/// Annulus masses `mu({y : t < |x - y| <= t + eps})` for every center `x`,
/// under the uniform measure on `cloud`. The centers need not be cloud
/// points, so masses can be taken on a coarser cloud than the net's.
pub fn annulus_stats(cloud: &PointCloud, centers: &[Vec<f64>], t: f64, eps: f64, band: AnnulusBand) -> AnnulusStats {
    assert!(t > 0.0 && eps > 0.0, "t and epsilon must be positive");
    let w = cloud.weight();
    let masses: Vec<f64> = centers
        .par_iter()
        .map(|x| {
            let hits = (0..cloud.len())
                .filter(|&y| {
                    let r = euclid(x, cloud.point(y));
                    r > t && r <= t + eps
                })
                .count();
            hits as f64 * w
        })
        .collect();
    let mut sorted = masses.clone();
    sorted.sort_by(f64::total_cmp);
    let quantiles = if sorted.is_empty() {
        [0.0; 5]
    } else {
        let at = |f: f64| sorted[((sorted.len() - 1) as f64 * f).round() as usize];
        [at(0.0), at(0.25), at(0.5), at(0.75), at(1.0)]
    };
    let qualifying = masses.iter().filter(|&&m| m >= band.c1 * eps && m <= band.c2 * eps).count();
    let qualifying_fraction = if masses.is_empty() { 0.0 } else { qualifying as f64 / masses.len() as f64 };
    AnnulusStats { t, epsilon: eps, masses, quantiles, band, qualifying_fraction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adreg::{cantor_product, greedy_net, FractalSpec, Net};

    fn setup() -> (PointCloud, Net) {
        let spec = FractalSpec::new(2, 0.45, 5).unwrap();
        let c = cantor_product(&spec).unwrap();
        let net = greedy_net(&c, 0.05, spec.s());
        (c, net)
    }

    #[test]
    fn beyond_the_diameter_everything_is_empty() {
        let (c, net) = setup();
        let st = annulus_stats(&c, &net.points(&c), c.diameter() + 0.01, 0.05, AnnulusBand::default());
        assert!(st.masses.iter().all(|&m| m == 0.0));
        assert_eq!(st.qualifying_fraction, 0.0);
    }

    #[test]
    fn wide_annulus_is_the_complement_of_the_ball() {
        let (c, net) = setup();
        let t = 0.3;
        let st = annulus_stats(&c, &net.points(&c), t, 10.0, AnnulusBand::default());
        for (&x, &m) in net.centers.iter().zip(&st.masses) {
            let ball = (0..c.len()).filter(|&y| c.dist(x, y) <= t).count() as f64 * c.weight();
            assert!((m - (1.0 - ball)).abs() < 1e-12);
        }
    }

    #[test]
    fn quantiles_are_ordered() {
        let (c, net) = setup();
        let st = annulus_stats(&c, &net.points(&c), 0.5, 0.05, AnnulusBand::default());
        assert!(st.quantiles.windows(2).all(|w| w[0] <= w[1]));
        assert!(st.masses.iter().all(|&m| (0.0..=1.0).contains(&m)));
    }
}
