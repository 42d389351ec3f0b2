use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::adreg::{AnnulusBand, FractalSpec};
use crate::graphs::{CatalogGraph, Graph};

/// One experiment, as read from a JSON document.
///
/// ```json
/// {"kind": "ir-sweep", "fields": [3, 5], "dims": [2], "sizes": [{"fraction": 0.5}], "trials": 4, "seed": 7}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub experiment: Experiment,
    /// Required by the randomized kinds.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[serde(default)]
    pub jobs: Option<usize>,
    /// Directory the report is written to.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    IrSweep(IrSweep),
    Threshold(Threshold),
    ExtremalTable(ExtremalTable),
    AdregScan(AdregScan),
    GraphDistanceSet(GraphDistanceSetRun),
}

impl Experiment {
    pub fn kind(&self) -> &'static str {
        match self {
            Experiment::IrSweep(_) => "ir-sweep",
            Experiment::Threshold(_) => "threshold",
            Experiment::ExtremalTable(_) => "extremal-table",
            Experiment::AdregScan(_) => "adreg-scan",
            Experiment::GraphDistanceSet(_) => "graph-distance-set",
        }
    }

    fn randomized(&self) -> bool {
        match self {
            Experiment::IrSweep(_) | Experiment::Threshold(_) => true,
            Experiment::GraphDistanceSet(g) => matches!(g.points, PointSource::Random { .. }),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrSweep {
    /// Field orders `q`.
    pub fields: Vec<u32>,
    pub dims: Vec<usize>,
    pub sizes: Vec<SizeRule>,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub q: u32,
    pub d: usize,
    pub graph: GraphSpec,
    /// Size levels, sorted by resolved size before running.
    pub sizes: Vec<SizeRule>,
    pub trials: usize,
    /// Node budget per containment search.
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalTable {
    pub graphs: Vec<GraphSpec>,
    pub n_min: usize,
    pub n_max: usize,
    #[serde(default)]
    pub method: ExtremalMethod,
    /// JSON cache of earlier values keyed by `n` and graph text.
    #[serde(default)]
    pub cache: Option<PathBuf>,
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalMethod {
    Exhaustive,
    BranchBound,
    /// Exhaustive up to `n = 7` (or the configured cap if lower), branch and bound above.
    #[default]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdregScan {
    pub specs: Vec<FractalSpec>,
    /// Scales `eps = diam * 2^-k`.
    pub eps_exponents: Vec<u32>,
    /// Distances `t = diam * f`.
    pub t_fractions: Vec<f64>,
    #[serde(default)]
    pub graphs: Vec<GraphSpec>,
    #[serde(default)]
    pub band: AnnulusBand,
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDistanceSetRun {
    pub graph: GraphSpec,
    pub points: PointSource,
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSource {
    /// Every point of `F_q^d`.
    All { q: u32, d: usize },
    Random { q: u32, d: usize, size: SizeRule },
    File(PathBuf),
}

/// How many points to draw from `F_q^d`. Results are clamped to `q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeRule {
    Absolute(usize),
    /// `ceil(c q^s)`.
    QPow { c: f64, s: f64 },
    /// `ceil(c q^{(d+1)/2})`.
    QDim(f64),
    /// `ceil(f q^d)`.
    Fraction(f64),
}

impl SizeRule {
    pub fn resolve(&self, q: u32, d: usize) -> usize {
        let total = (q as f64).powi(d as i32);
        let raw = match *self {
            SizeRule::Absolute(n) => n as f64,
            SizeRule::QPow { c, s } => c * (q as f64).powf(s),
            SizeRule::QDim(c) => c * (q as f64).powf((d as f64 + 1.0) / 2.0),
            SizeRule::Fraction(f) => f * total,
        };
        snap_ceil(raw.min(total).max(0.0))
    }

    pub fn label(&self) -> String {
        match *self {
            SizeRule::Absolute(n) => format!("{n}"),
            SizeRule::QPow { c, s } => format!("{c}*q^{s}"),
            SizeRule::QDim(c) => format!("{c}*q^((d+1)/2)"),
            SizeRule::Fraction(f) => format!("{f}*q^d"),
        }
    }
}

impl std::str::FromStr for SizeRule {
    type Err = ExperimentError;

    /// Accepts the forms produced by [`SizeRule::label`]: `20`, `q^1.5`,
    /// `2*q^1.5`, `q^((d+1)/2)`, `0.5*q^d`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ExperimentError::Config(format!("cannot parse size rule `{text}`"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Ok(n) = t.parse::<usize>() {
            return Ok(SizeRule::Absolute(n));
        }
        let (c, power) = match t.split_once('*') {
            Some((c, rest)) => (c.parse::<f64>().map_err(|_| bad())?, rest),
            None => (1.0, t.as_str()),
        };
        let exponent = power.strip_prefix("q^").ok_or_else(bad)?;
        Ok(match exponent {
            "d" => SizeRule::Fraction(c),
            "((d+1)/2)" | "(d+1)/2" => SizeRule::QDim(c),
            s => SizeRule::QPow { c, s: s.parse().map_err(|_| bad())? },
        })
    }
}

/// Ceiling that treats values within rounding noise of an integer as
/// that integer, so `9^1.5` gives 27 and not 28.
fn snap_ceil(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// A pattern graph: a catalog name (`"C6"`), an explicit edge list, or a
/// graph text file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Name(String),
    Edges { n: usize, edges: Vec<(usize, usize)> },
    File { file: PathBuf },
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, ExperimentError> {
        Ok(match self {
            GraphSpec::Name(name) => name.parse::<CatalogGraph>()?.build()?,
            GraphSpec::Edges { n, edges } => Graph::from_edges(*n, edges)?,
            GraphSpec::File { file } => Graph::read_text_file(file)?,
        })
    }

    pub fn label(&self) -> String {
        match self {
            GraphSpec::Name(name) => name.clone(),
            GraphSpec::Edges { n, edges } => format!("custom(n={n};m={})", edges.len()),
            GraphSpec::File { file } => file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        }
    }
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig { experiment, seed: None, jobs: None, out: None }
    }

    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn read_file(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|e| ExperimentError::Config(format!("{}: {e}", path.display())))?;
        ExperimentConfig::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    /// Checks parameters that can be checked without running anything.
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::Config(msg));
        if self.experiment.randomized() && self.seed.is_none() {
            return bad(format!("{} needs a seed", self.experiment.kind()));
        }
        if self.jobs == Some(0) {
            return bad("jobs must be at least 1".into());
        }
        match &self.experiment {
            Experiment::IrSweep(c) => {
                if c.dims.iter().any(|&d| d < 2) {
                    return bad("ir-sweep dimensions must be at least 2".into());
                }
            }
            Experiment::Threshold(c) => {
                if c.d < 2 {
                    return bad("threshold dimension must be at least 2".into());
                }
                c.graph.build()?;
            }
            Experiment::ExtremalTable(c) => {
                if c.n_min > c.n_max {
                    return bad(format!("n_min {} exceeds n_max {}", c.n_min, c.n_max));
                }
                for g in &c.graphs {
                    g.build()?;
                }
            }
            Experiment::AdregScan(c) => {
                for spec in &c.specs {
                    let invalid = |e: crate::adreg::AdregError| ExperimentError::Config(format!("spec d={} lambda={} depth={}: {e}", spec.d, spec.lambda, spec.depth));
                    spec.validate().map_err(invalid)?;
                    let diam = (spec.d as f64).sqrt() * (1.0 - spec.cell_side());
                    for &k in &c.eps_exponents {
                        spec.check_epsilon(diam / 2f64.powi(k as i32)).map_err(invalid)?;
                    }
                }
                if c.t_fractions.iter().any(|&f| !(f.is_finite() && f > 0.0)) {
                    return bad("t fractions must be positive".into());
                }
                for g in &c.graphs {
                    g.build()?;
                }
            }
            Experiment::GraphDistanceSet(c) => {
                c.graph.build()?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_rules() {
        assert_eq!(SizeRule::QPow { c: 1.0, s: 1.5 }.resolve(9, 2), 27);
        assert_eq!(SizeRule::QDim(1.0).resolve(5, 2), 12);
        assert_eq!(SizeRule::QDim(1.0).resolve(5, 3), 25);
        assert_eq!(SizeRule::Fraction(0.5).resolve(5, 3), 63);
        assert_eq!(SizeRule::Absolute(10_000).resolve(3, 2), 9);
        assert_eq!(SizeRule::QPow { c: 2.0, s: 2.0 }.resolve(7, 2), 49);
    }

    #[test]
    fn size_rule_text() {
        for rule in [SizeRule::Absolute(7), SizeRule::QPow { c: 2.0, s: 1.5 }, SizeRule::QDim(0.5), SizeRule::Fraction(0.25)] {
            assert_eq!(rule.label().parse::<SizeRule>().unwrap(), rule);
        }
        assert_eq!("q^2".parse::<SizeRule>().unwrap(), SizeRule::QPow { c: 1.0, s: 2.0 });
        assert!("q2".parse::<SizeRule>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"threshold","q":9,"d":2,"graph":"C6","sizes":[{"q_pow":{"c":1.0,"s":1.5}},{"fraction":1.0}],"trials":3,"seed":1}"#;
        let config = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(config.experiment.kind(), "threshold");
        assert_eq!(ExperimentConfig::from_json(&config.to_json()).unwrap(), config);
    }

    #[test]
    fn graph_specs() {
        let custom: GraphSpec = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(custom.build().unwrap().edge_count(), 2);
        let named: GraphSpec = serde_json::from_str(r#""Q3""#).unwrap();
        assert_eq!(named.build().unwrap().vertex_count(), 8);
        assert!(GraphSpec::Name("X9".into()).build().is_err());
    }

    #[test]
    fn validation_errors() {
        let missing_seed = r#"{"kind":"ir-sweep","fields":[3],"dims":[2],"sizes":[],"trials":1}"#;
        assert!(matches!(ExperimentConfig::from_json(missing_seed), Err(ExperimentError::Config(_))));
        let bad_dim = r#"{"kind":"ir-sweep","fields":[3],"dims":[1],"sizes":[],"trials":1,"seed":1}"#;
        assert!(ExperimentConfig::from_json(bad_dim).is_err());
        let shallow = r#"{"kind":"adreg-scan","specs":[{"d":2,"lambda":0.45,"depth":3}],"eps_exponents":[8],"t_fractions":[0.5]}"#;
        assert!(ExperimentConfig::from_json(shallow).is_err());
        assert!(ExperimentConfig::from_json("{").is_err());
    }
}
