use std::collections::HashMap;

use rayon::prelude::*;

use super::PointCloud;

/// Greedy net: centers pairwise more than `3 eps` apart whose closed
/// `3 eps`-balls cover the cloud.
#[derive(Clone, Debug, PartialEq)]
pub struct Net {
    /// Cloud indices of the centers, in selection order (increasing).
    pub centers: Vec<usize>,
    pub epsilon: f64,
    /// `centers.len() * eps^s` for the `s` passed to [`greedy_net`].
    pub n_eps_s: f64,
}

/// Outcome of re-checking a net from scratch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NetCheck {
    pub separated: bool,
    pub covering: bool,
}

impl NetCheck {
    pub fn ok(&self) -> bool {
        self.separated && self.covering
    }
}

impl Net {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn points(&self, cloud: &PointCloud) -> Vec<Vec<f64>> {
        self.centers.iter().map(|&i| cloud.point(i).to_vec()).collect()
    }

    /// Brute-force check of both net properties, independent of the grid
    /// used during construction.
    pub fn verify(&self, cloud: &PointCloud) -> NetCheck {
        let r = 3.0 * self.epsilon;
        let c = &self.centers;
        let separated = (0..c.len()).into_par_iter().all(|i| (i + 1..c.len()).all(|j| cloud.dist(c[i], c[j]) > r));
        let covering = (0..cloud.len()).into_par_iter().all(|p| c.iter().any(|&x| cloud.dist(p, x) <= r));
        NetCheck { separated, covering }
    }
}

/// Scans the cloud in order and keeps every point not within `3 eps` of a
/// center already kept.
pub fn greedy_net(cloud: &PointCloud, eps: f64, s: f64) -> Net {
    assert!(eps > 0.0 && eps.is_finite(), "epsilon must be positive");
    let r = 3.0 * eps;
    let d = cloud.dim();
    // Cells of side `3 eps`, hashed to one word; a collision only adds
    // candidates, never hides one.
    let cell = |x: &[f64]| -> Vec<i64> { x.iter().map(|c| (c / r).floor() as i64).collect() };
    let hash = |k: &[i64]| k.iter().fold(0u64, |h, &c| (h ^ c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let offsets: Vec<Vec<i64>> = (0..3usize.pow(d as u32))
        .map(|mut m| {
            (0..d)
                .map(|_| {
                    let o = (m % 3) as i64 - 1;
                    m /= 3;
                    o
                })
                .collect()
        })
        .collect();
    let mut grid: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut centers = Vec::new();
    let mut probe = vec![0i64; d];
    for i in 0..cloud.len() {
        let k = cell(cloud.point(i));
        let covered = offsets.iter().any(|off| {
            for (p, (a, b)) in probe.iter_mut().zip(k.iter().zip(off)) {
                *p = a + b;
            }
            grid.get(&hash(&probe)).is_some_and(|bucket| bucket.iter().any(|&c| cloud.dist(i, c) <= r))
        });
        if !covered {
            centers.push(i);
            grid.entry(hash(&k)).or_default().push(i);
        }
    }
    let n_eps_s = centers.len() as f64 * eps.powf(s);
    Net { centers, epsilon: eps, n_eps_s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adreg::{cantor_product, FractalSpec};

    #[test]
    fn huge_epsilon_gives_one_center() {
        let spec = FractalSpec::new(2, 0.4, 4).unwrap();
        let c = cantor_product(&spec).unwrap();
        let net = greedy_net(&c, c.diameter() / 3.0, spec.s());
        assert_eq!(net.centers, vec![0]);
        assert!(net.verify(&c).ok());
    }

    #[test]
    fn tiny_epsilon_keeps_everything() {
        let spec = FractalSpec::new(1, 1.0 / 3.0, 4).unwrap();
        let c = cantor_product(&spec).unwrap();
        // Minimal gap is the middle third at the last level.
        let gap = spec.cell_side();
        let net = greedy_net(&c, gap / 7.0, spec.s());
        assert_eq!(net.len(), c.len());
        assert!(net.verify(&c).ok());
    }

    #[test]
    fn verify_detects_broken_nets() {
        let spec = FractalSpec::new(2, 0.45, 4).unwrap();
        let c = cantor_product(&spec).unwrap();
        let mut net = greedy_net(&c, 0.05, spec.s());
        assert!(net.verify(&c).ok());
        net.centers.pop();
        assert!(!net.verify(&c).covering);
        net.centers.push(net.centers[0] + 1);
        assert!(!net.verify(&c).separated);
    }

    #[test]
    fn matches_quadratic_greedy() {
        let spec = FractalSpec::new(2, 0.3, 4).unwrap();
        let c = cantor_product(&spec).unwrap();
        for eps in [0.01, 0.03, 0.07, 0.2] {
            let mut brute: Vec<usize> = Vec::new();
            for i in 0..c.len() {
                if brute.iter().all(|&x| c.dist(i, x) > 3.0 * eps) {
                    brute.push(i);
                }
            }
            assert_eq!(greedy_net(&c, eps, spec.s()).centers, brute);
        }
    }
}
