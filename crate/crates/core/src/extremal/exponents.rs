use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::ExtremalError;
use crate::graphs::{min_side_max_degree, recognize, CatalogGraph, Graph};

/// Which upper bound `ex(n, G) <~ n^{2 - alpha}` an exponent comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExponentSource {
    /// `alpha = 1/r`, `r` the smaller side's maximum degree.
    Aks,
    /// Even cycles `C_{2k}`: `alpha = 1 - 1/k`.
    BondySimonovits,
    /// The cube `Q_3`: `alpha = 2/5`.
    ErdosSimonovits,
    /// Cubes `Q_k`, `k >= 4`.
    JanzerSudakov,
}

impl fmt::Display for ExponentSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExponentSource::Aks => "aks",
            ExponentSource::BondySimonovits => "bondy-simonovits",
            ExponentSource::ErdosSimonovits => "erdos-simonovits",
            ExponentSource::JanzerSudakov => "janzer-sudakov",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentInfo {
    pub alpha: Ratio<i64>,
    pub source: ExponentSource,
    /// Set for [`ExponentSource::Aks`].
    pub r: Option<usize>,
}

pub fn aks_exponent(g: &Graph) -> Result<ExponentInfo, ExtremalError> {
    let r = min_side_max_degree(g)?;
    Ok(ExponentInfo { alpha: Ratio::new(1, r as i64), source: ExponentSource::Aks, r: Some(r) })
}

/// The largest `alpha` among the bounds that apply to `g`.
pub fn best_known_exponent(g: &Graph) -> Result<ExponentInfo, ExtremalError> {
    let aks = aks_exponent(g)?;
    let special = match recognize(g) {
        Some(CatalogGraph::Cycle(n)) if n % 2 == 0 => {
            let k = (n / 2) as i64;
            Some((Ratio::new(k - 1, k), ExponentSource::BondySimonovits))
        }
        Some(CatalogGraph::Hypercube(3)) => Some((Ratio::new(2, 5), ExponentSource::ErdosSimonovits)),
        Some(CatalogGraph::Hypercube(k)) if k >= 4 => {
            let half = 1i64 << (k - 1);
            Some((Ratio::new(half - 1, (k as i64 - 1) * half), ExponentSource::JanzerSudakov))
        }
        _ => None,
    };
    Ok(match special {
        Some((alpha, source)) if alpha > aks.alpha => ExponentInfo { alpha, source, r: None },
        _ => aks,
    })
}

/// Which side of `max((d+1)/2, 1/alpha)` attains the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Binding {
    Dimension,
    Extremal,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdResult {
    pub pattern: Graph,
    pub d: usize,
    pub exponent: ExponentInfo,
    /// `s* = max((d+1)/2, 1/alpha)`.
    pub s_star: Ratio<i64>,
    pub binding: Binding,
}

pub fn threshold_exponent(g: &Graph, d: usize) -> Result<ThresholdResult, ExtremalError> {
    if d < 2 {
        return Err(ExtremalError::BadDimension(d));
    }
    let exponent = best_known_exponent(g)?;
    let dim = Ratio::new(d as i64 + 1, 2);
    let ext = exponent.alpha.recip();
    let (s_star, binding) = match dim.cmp(&ext) {
        std::cmp::Ordering::Greater => (dim, Binding::Dimension),
        std::cmp::Ordering::Less => (ext, Binding::Extremal),
        std::cmp::Ordering::Equal => (dim, Binding::Both),
    };
    Ok(ThresholdResult { pattern: g.clone(), d, exponent, s_star, binding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, hypercube_graph, path_graph, shattering_graph, GraphError};

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn aks_examples() {
        let c8 = aks_exponent(&cycle_graph(8).unwrap()).unwrap();
        assert_eq!((c8.alpha, c8.r), (r(1, 2), Some(2)));
        assert_eq!(aks_exponent(&hypercube_graph(4).unwrap()).unwrap().alpha, r(1, 4));
        assert_eq!(aks_exponent(&shattering_graph(3).unwrap()).unwrap().alpha, r(1, 3));
        assert_eq!(aks_exponent(&path_graph(3).unwrap()).unwrap().alpha, r(1, 1));
    }

    #[test]
    fn best_known_examples() {
        let c6 = best_known_exponent(&cycle_graph(6).unwrap()).unwrap();
        assert_eq!((c6.alpha, c6.source), (r(2, 3), ExponentSource::BondySimonovits));
        let q3 = best_known_exponent(&hypercube_graph(3).unwrap()).unwrap();
        assert_eq!((q3.alpha, q3.source), (r(2, 5), ExponentSource::ErdosSimonovits));
        let q4 = best_known_exponent(&hypercube_graph(4).unwrap()).unwrap();
        assert_eq!((q4.alpha, q4.source), (r(7, 24), ExponentSource::JanzerSudakov));
        // C_4 = Q_2: both give 1/2, the AKS record is kept.
        assert_eq!(best_known_exponent(&cycle_graph(4).unwrap()).unwrap().alpha, r(1, 2));
        let s3 = best_known_exponent(&shattering_graph(3).unwrap()).unwrap();
        assert_eq!(s3.source, ExponentSource::Aks);
    }

    #[test]
    fn non_bipartite_rejected() {
        let err = best_known_exponent(&cycle_graph(5).unwrap()).unwrap_err();
        assert_eq!(err, ExtremalError::Graph(GraphError::NotBipartite));
        assert!(threshold_exponent(&complete_graph(3).unwrap(), 2).is_err());
    }

    #[test]
    fn threshold_examples() {
        let c4 = threshold_exponent(&cycle_graph(4).unwrap(), 3).unwrap();
        assert_eq!((c4.s_star, c4.binding), (r(2, 1), Binding::Both));
        let c6 = threshold_exponent(&cycle_graph(6).unwrap(), 2).unwrap();
        assert_eq!((c6.s_star, c6.binding), (r(3, 2), Binding::Both));
        let q3 = threshold_exponent(&hypercube_graph(3).unwrap(), 3).unwrap();
        assert_eq!((q3.s_star, q3.binding), (r(5, 2), Binding::Extremal));
        assert_eq!(threshold_exponent(&cycle_graph(4).unwrap(), 1).unwrap_err(), ExtremalError::BadDimension(1));
    }
}
