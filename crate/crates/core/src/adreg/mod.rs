//! Euclidean side: product Cantor sets as finite surrogates of
//! `s`-regular measures, greedy nets, annulus masses, the approximate
//! distance graph and `(G, t, eps)`-approximations.

mod annulus;
mod approx;
mod net;

use thiserror::Error;

use crate::limits::Limits;

pub use annulus::{annulus_stats, AnnulusBand, AnnulusStats};
pub use approx::{
    approx_distance_graph, edge_scaling, edge_scaling_with, find_approximation, least_squares_slope, validate_approximation, Approximation, ScalingRecord,
    ScalingReport, GUARD_BAND,
};
pub use net::{greedy_net, Net, NetCheck};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdregError {
    #[error("invalid fractal spec: {0}")]
    BadSpec(String),
    #[error("cloud would have {count} points, above the configured cap {cap}")]
    TooLarge { count: u128, cap: usize },
    #[error("epsilon {eps} is below 4 * lambda^depth = {min}")]
    EpsilonBelowCellScale { eps: f64, min: f64 },
    #[error("epsilon and t must be positive and finite")]
    BadScale,
    #[error("need at least 3 epsilon values, got {0}")]
    TooFewScales(usize),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("subgraph search budget exhausted")]
    BudgetExceeded,
}

/// The `d`-fold product of the two-piece Cantor construction with ratio
/// `lambda`, cut off after `depth` steps.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FractalSpec {
    pub d: usize,
    pub lambda: f64,
    pub depth: usize,
}

impl FractalSpec {
    pub fn new(d: usize, lambda: f64, depth: usize) -> Result<Self, AdregError> {
        let spec = FractalSpec { d, lambda, depth };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), AdregError> {
        if self.d == 0 {
            return Err(AdregError::BadSpec("dimension must be at least 1".into()));
        }
        if !(self.lambda > 0.0 && self.lambda <= 0.5) {
            return Err(AdregError::BadSpec(format!("lambda = {} is outside (0, 1/2]", self.lambda)));
        }
        Ok(())
    }

    /// Regularity exponent `d ln 2 / ln(1/lambda)`.
    pub fn s(&self) -> f64 {
        self.d as f64 * std::f64::consts::LN_2 / (1.0 / self.lambda).ln()
    }

    /// Side of a depth-`depth` cell.
    pub fn cell_side(&self) -> f64 {
        self.lambda.powi(self.depth as i32)
    }

    /// Smallest scale at which the surrogate is trusted.
    pub fn min_epsilon(&self) -> f64 {
        4.0 * self.cell_side()
    }

    /// `2^{depth d}`.
    pub fn point_count(&self) -> u128 {
        1u128.checked_shl((self.depth * self.d) as u32).unwrap_or(u128::MAX)
    }

    pub fn check_epsilon(&self, eps: f64) -> Result<(), AdregError> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(AdregError::BadScale);
        }
        let min = self.min_epsilon();
        if eps < min {
            return Err(AdregError::EpsilonBelowCellScale { eps, min });
        }
        Ok(())
    }
}

/// Finite point cloud with uniform weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    d: usize,
    coords: Vec<f64>,
    diameter: f64,
}

impl PointCloud {
    /// Cloud from explicit points; the diameter is computed by brute force.
    pub fn from_points(d: usize, points: &[Vec<f64>]) -> Result<Self, AdregError> {
        if d == 0 || points.iter().any(|p| p.len() != d) {
            return Err(AdregError::BadSpec("points must all have dimension d >= 1".into()));
        }
        let coords: Vec<f64> = points.iter().flatten().copied().collect();
        let mut cloud = PointCloud { d, coords, diameter: 0.0 };
        let n = cloud.len();
        cloud.diameter = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| cloud.dist(i, j)).fold(0.0, f64::max);
        Ok(cloud)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    /// Mass of each point.
    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        euclid(self.point(i), self.point(j))
    }

    /// `x_0,...,x_{d-1},weight` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out: Vec<String> = (0..self.d).map(|k| format!("x{k}")).collect();
        out.push("weight".into());
        let mut text = out.join(",") + "\n";
        let w = self.weight();
        for i in 0..self.len() {
            let row: Vec<String> = self.point(i).iter().map(|c| format!("{c:.17e}")).collect();
            text.push_str(&format!("{},{w:e}\n", row.join(",")));
        }
        text
    }
}

pub(crate) fn euclid(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

pub fn cantor_product(spec: &FractalSpec) -> Result<PointCloud, AdregError> {
    cantor_product_with(spec, &Limits::default())
}

/// Centers of all depth-`depth` cells, in lexicographic order (first
/// coordinate most significant). Each interval `[a, a + L]` is replaced by
/// `[a, a + lambda L]` and `[a + L - lambda L, a + L]`.
pub fn cantor_product_with(spec: &FractalSpec, limits: &Limits) -> Result<PointCloud, AdregError> {
    spec.validate()?;
    let count = spec.point_count();
    if count > limits.max_cloud_points as u128 {
        return Err(AdregError::TooLarge { count, cap: limits.max_cloud_points });
    }
    let (d, n, lambda) = (spec.d, spec.depth, spec.lambda);
    let half_cell = spec.cell_side() / 2.0;
    let line: Vec<f64> = (0..1usize << n)
        .map(|b| {
            let mut left = 0.0;
            let mut len = 1.0;
            for j in (0..n).rev() {
                if b >> j & 1 == 1 {
                    left += len - lambda * len;
                }
                len *= lambda;
            }
            left + half_cell
        })
        .collect();
    let per_axis = line.len();
    let total = count as usize;
    let mut coords = Vec::with_capacity(total * d);
    for i in 0..total {
        let mut rest = i;
        let mut digits = vec![0usize; d];
        for k in (0..d).rev() {
            digits[k] = rest % per_axis;
            rest /= per_axis;
        }
        coords.extend(digits.iter().map(|&b| line[b]));
    }
    let diameter = (d as f64).sqrt() * (1.0 - spec.cell_side());
    Ok(PointCloud { d, coords, diameter })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_thirds_depth_one() {
        let c = cantor_product(&FractalSpec::new(1, 1.0 / 3.0, 1).unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c.point(0)[0] - 1.0 / 6.0).abs() < 1e-15);
        assert!((c.point(1)[0] - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(c.weight(), 0.5);
    }

    #[test]
    fn quarter_ratio_plane_has_dimension_one() {
        let spec = FractalSpec::new(2, 0.25, 3).unwrap();
        assert!((spec.s() - 1.0).abs() < 1e-12);
        assert_eq!(cantor_product(&spec).unwrap().len(), 64);
    }

    #[test]
    fn depth_zero_is_the_center() {
        let c = cantor_product(&FractalSpec::new(3, 0.4, 0).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.point(0), &[0.5, 0.5, 0.5]);
        assert_eq!(c.weight(), 1.0);
        assert_eq!(c.diameter(), 0.0);
    }

    #[test]
    fn points_are_sorted_distinct_and_inside() {
        let c = cantor_product(&FractalSpec::new(2, 0.45, 4).unwrap()).unwrap();
        for i in 1..c.len() {
            assert!(c.point(i - 1) < c.point(i));
        }
        assert!(c.coords.iter().all(|&x| x > 0.0 && x < 1.0));
        let brute = PointCloud::from_points(2, &(0..c.len()).map(|i| c.point(i).to_vec()).collect::<Vec<_>>()).unwrap();
        assert!((brute.diameter() - c.diameter()).abs() < 1e-12);
    }

    #[test]
    fn total_mass_is_one() {
        for depth in 0..6 {
            let c = cantor_product(&FractalSpec::new(2, 0.3, depth).unwrap()).unwrap();
            assert_eq!(c.weight() * c.len() as f64, 1.0);
        }
    }

    #[test]
    fn half_ratio_is_a_grid() {
        let spec = FractalSpec::new(1, 0.5, 3).unwrap();
        assert_eq!(spec.s(), 1.0);
        let c = cantor_product(&spec).unwrap();
        let xs: Vec<f64> = (0..8).map(|i| c.point(i)[0]).collect();
        let expect: Vec<f64> = (0..8).map(|i| (2 * i + 1) as f64 / 16.0).collect();
        assert_eq!(xs, expect);
    }

    #[test]
    fn spec_validation() {
        assert!(FractalSpec::new(2, 0.6, 3).is_err());
        assert!(FractalSpec::new(2, 0.0, 3).is_err());
        assert!(FractalSpec::new(0, 0.3, 3).is_err());
        let big = FractalSpec::new(2, 0.3, 11).unwrap();
        assert!(matches!(cantor_product(&big), Err(AdregError::TooLarge { .. })));
        let spec = FractalSpec::new(1, 0.5, 4).unwrap();
        assert!(spec.check_epsilon(0.25).is_ok());
        assert!(spec.check_epsilon(0.2).is_err());
        assert_eq!(spec.check_epsilon(-1.0), Err(AdregError::BadScale));
    }

    #[test]
    fn csv_export() {
        let c = cantor_product(&FractalSpec::new(1, 1.0 / 3.0, 1).unwrap()).unwrap();
        let csv = c.to_csv();
        assert!(csv.starts_with("x0,weight\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
