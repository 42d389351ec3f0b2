use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{AdregScan, ExtremalMethod, ExtremalTable, GraphDistanceSetRun, IrSweep, PointSource, Threshold};
use super::{ExperimentError, Outcome};
use crate::adreg::{
    annulus_stats, approx_distance_graph, cantor_product_with, find_approximation, greedy_net, AdregError, FractalSpec, PointCloud,
};
use crate::extremal::{
    best_known_exponent, ex_branch_bound_with, ex_exhaustive_with, threshold_exponent, BranchBound, ExtremalError, ExtremalResult,
};
use crate::ffgeom::{
    all_points_with, distance_histogram_with, graph_distance_set, ir_report, random_subset_with, Coverage, PointSet, Verdict,
};
use crate::field::field_of_order;
use crate::graphs::{Graph, SubgraphSearch};
use crate::limits::Limits;
use crate::rng::derive_seed;

/// CSV text built in memory.
struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Table { writer }
    }

    fn row(&mut self, fields: Vec<String>) {
        self.writer.write_record(&fields).expect("in-memory write");
    }

    fn finish(self) -> String {
        String::from_utf8(self.writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn ratio_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(super) fn ir_sweep(c: &IrSweep, seed: u64, limits: &Limits) -> Result<Outcome, ExperimentError> {
    let mut instances = Vec::new();
    for &q in &c.fields {
        let field = field_of_order(q, limits)?;
        for &d in &c.dims {
            for (si, rule) in c.sizes.iter().enumerate() {
                for trial in 0..c.trials {
                    instances.push((field.clone(), d, si, *rule, trial));
                }
            }
        }
    }
    let rows: Vec<(Vec<String>, bool, bool, f64)> = instances
        .par_iter()
        .map(|(field, d, si, rule, trial)| {
            let q = field.q();
            let size = rule.resolve(q, *d);
            let s = derive_seed(seed, &[q as u64, *d as u64, *si as u64, *trial as u64]);
            let set = random_subset_with(field, *d, size, s, limits)?;
            let hist = distance_histogram_with(&set, limits)?;
            let conserved = hist.total() == (size as u64) * (size as u64);
            let report = ir_report(&hist, *d);
            let nonzero = report.records.iter().filter(|r| !r.t.is_zero());
            let max_r = nonzero.clone().map(|r| ratio_f64(&r.remainder).abs()).fold(0.0, f64::max);
            let (min_t, min_slack) = report.min_slack().map_or((String::new(), f64::INFINITY), |(t, s)| (field.format(t), s));
            let bound = report.records.first().map_or(0.0, |r| r.bound);
            let row = vec![
                q.to_string(),
                d.to_string(),
                rule.label(),
                size.to_string(),
                trial.to_string(),
                s.to_string(),
                hist.total().to_string(),
                conserved.to_string(),
                min_t,
                f6(min_slack),
                f6(max_r),
                f6(bound),
                report.pass.to_string(),
            ];
            Ok((row, report.pass, conserved, min_slack))
        })
        .collect::<Result<_, ExperimentError>>()?;

    let mut table = Table::new(&[
        "q", "d", "size_rule", "size", "trial", "seed", "total_pairs", "conserved", "min_slack_t", "min_slack", "max_abs_remainder",
        "bound", "pass",
    ]);
    let failures = rows.iter().filter(|r| !r.1).count();
    let unconserved = rows.iter().filter(|r| !r.2).count();
    let min_slack = rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
    for (row, ..) in rows.iter().cloned() {
        table.row(row);
    }
    let pass = failures == 0 && unconserved == 0;
    let summary = json!({
        "instances": rows.len(),
        "bound_failures": failures,
        "conservation_failures": unconserved,
        "min_slack": if min_slack.is_finite() { json!(min_slack) } else { Value::Null },
        "pass": pass,
    });
    Ok(Outcome { records_csv: table.finish(), summary, pass })
}

/// Success rates per size level, with sizes nondecreasing.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct CurvePoint {
    pub size: usize,
    pub trials: usize,
    pub successes: usize,
    pub indeterminate: usize,
}

impl CurvePoint {
    /// Successes over decided trials; `None` when nothing was decided.
    pub fn rate(&self) -> Option<f64> {
        let decided = self.trials - self.indeterminate;
        (decided > 0).then(|| self.successes as f64 / decided as f64)
    }
}

/// Allows at most one decrease, of at most 0.1, along the curve.
pub(crate) fn monotone_up_to_noise(rates: &[f64]) -> bool {
    let drops: Vec<f64> = rates.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 1e-12).collect();
    drops.len() <= 1 && drops.iter().all(|&d| d <= 0.1 + 1e-12)
}

pub(super) fn threshold(c: &Threshold, seed: u64, limits: &Limits) -> Result<Outcome, ExperimentError> {
    let field = field_of_order(c.q, limits)?;
    let pattern = c.graph.build()?;
    let total = (c.q as u128).pow(c.d as u32) as usize;
    let mut levels: Vec<(usize, String)> = c.sizes.iter().map(|r| (r.resolve(c.q, c.d), r.label())).collect();
    levels.sort_by_key(|l| l.0);
    let search = SubgraphSearch::new().budget(c.budget);

    let instances: Vec<(usize, usize)> = (0..levels.len()).flat_map(|l| (0..c.trials).map(move |t| (l, t))).collect();
    let outcomes: Vec<(Coverage, usize, usize, u64)> = instances
        .par_iter()
        .map(|&(l, trial)| {
            // One seed per trial across all levels: samples are nested.
            let s = derive_seed(seed, &[trial as u64]);
            let set = random_subset_with(&field, c.d, levels[l].0, s, limits)?;
            let gds = graph_distance_set(&set, &pattern, &search, limits)?;
            let nonzero = || gds.per_t.iter().filter(|v| !v.t.is_zero());
            let absent = nonzero().filter(|v| v.verdict == Verdict::Absent).count();
            let unknown = nonzero().filter(|v| v.verdict == Verdict::Indeterminate).count();
            Ok((gds.coverage(), absent, unknown, s))
        })
        .collect::<Result<_, ExperimentError>>()?;

    let mut table = Table::new(&["q", "d", "graph", "size_rule", "size", "trial", "seed", "coverage", "absent_t", "indeterminate_t"]);
    let mut curve: Vec<CurvePoint> = levels.iter().map(|l| CurvePoint { size: l.0, trials: c.trials, successes: 0, indeterminate: 0 }).collect();
    for (&(l, trial), (coverage, absent, unknown, s)) in instances.iter().zip(&outcomes) {
        match coverage {
            Coverage::Full => curve[l].successes += 1,
            Coverage::Indeterminate => curve[l].indeterminate += 1,
            Coverage::Partial => {}
        }
        table.row(vec![
            c.q.to_string(),
            c.d.to_string(),
            c.graph.label(),
            levels[l].1.clone(),
            levels[l].0.to_string(),
            trial.to_string(),
            s.to_string(),
            format!("{coverage:?}").to_lowercase(),
            absent.to_string(),
            unknown.to_string(),
        ]);
    }
    let rates: Vec<f64> = curve.iter().filter_map(|p| p.rate()).collect();
    let monotone = monotone_up_to_noise(&rates);
    let anchor_ok = curve.iter().filter(|p| p.size == total).all(|p| p.rate().is_none_or(|r| r == 1.0));
    let smallest_full = curve.iter().find(|p| p.trials > 0 && p.rate() == Some(1.0)).map(|p| p.size);
    let s_star = threshold_exponent(&pattern, c.d).ok().map(|t| t.s_star.to_string());
    let q_ln = (c.q as f64).ln();
    let summary = json!({
        "s_star": s_star,
        "curve": curve.iter().zip(&levels).map(|(p, l)| json!({
            "size": p.size,
            "size_rule": l.1,
            "log_q_size": if p.size > 0 { json!((p.size as f64).ln() / q_ln) } else { Value::Null },
            "trials": p.trials,
            "successes": p.successes,
            "indeterminate": p.indeterminate,
            "rate": p.rate(),
        })).collect::<Vec<_>>(),
        "smallest_full_success_size": smallest_full,
        "monotone": monotone,
        "full_space_anchor": anchor_ok,
    });
    let pass = monotone && anchor_ok;
    Ok(Outcome { records_csv: table.finish(), summary, pass })
}

/// Above this `n` the mask scan costs more than branch and bound.
const AUTO_EXHAUSTIVE_N: usize = 7;

fn cache_key(n: usize, g: &Graph) -> String {
    format!("{n}|{}", g.to_text())
}

fn read_cache(path: &Path) -> BTreeMap<String, Value> {
    std::fs::read_to_string(path).ok().and_then(|t| serde_json::from_str(&t).ok()).unwrap_or_default()
}

pub(super) fn extremal_table(c: &ExtremalTable, limits: &Limits) -> Result<Outcome, ExperimentError> {
    let mut cache = c.cache.as_deref().map(read_cache).unwrap_or_default();
    let opts = BranchBound { budget: c.budget.or(BranchBound::default().budget), ..BranchBound::default() };
    let mut table = Table::new(&[
        "n", "graph", "method", "value", "witness", "alpha", "alpha_source", "reference", "elapsed_ms", "status",
    ]);
    let mut pass = true;
    let mut computed = 0;
    let mut skipped = 0;
    for spec in &c.graphs {
        let g = spec.build()?;
        let exponent = best_known_exponent(&g).ok();
        for n in c.n_min..=c.n_max {
            let key = cache_key(n, &g);
            let method = match c.method {
                ExtremalMethod::Exhaustive => ExtremalMethod::Exhaustive,
                ExtremalMethod::BranchBound => ExtremalMethod::BranchBound,
                ExtremalMethod::Auto if n <= limits.max_exhaustive_n.min(AUTO_EXHAUSTIVE_N) => ExtremalMethod::Exhaustive,
                ExtremalMethod::Auto => ExtremalMethod::BranchBound,
            };
            let method_name = match method {
                ExtremalMethod::Exhaustive => "exhaustive",
                _ => "branch-bound",
            };
            let start = Instant::now();
            let (value, witness, status) = if let Some(hit) = cache.get(&key) {
                (hit["value"].as_u64().map(|v| v.to_string()).unwrap_or_default(), hit["witness"].as_str().unwrap_or("").to_string(), "cached")
            } else {
                let result: Result<ExtremalResult, ExtremalError> = match method {
                    ExtremalMethod::Exhaustive => ex_exhaustive_with(n, &g, limits),
                    _ => ex_branch_bound_with(n, &g, &opts, limits),
                };
                match result {
                    Ok(r) => {
                        pass &= r.verify();
                        computed += 1;
                        let w = r.witness.edge_list_string();
                        cache.insert(key, json!({"value": r.value, "witness": w}));
                        (r.value.to_string(), w, "ok")
                    }
                    Err(e @ (ExtremalError::TooLarge { .. } | ExtremalError::BudgetExceeded { .. })) => {
                        skipped += 1;
                        (String::new(), String::new(), if matches!(e, ExtremalError::TooLarge { .. }) { "skipped:too-large" } else { "skipped:budget" })
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            let elapsed = if status == "cached" { 0 } else { start.elapsed().as_millis() };
            let (alpha, source, reference) = match exponent {
                Some(e) => {
                    let a = *e.alpha.numer() as f64 / *e.alpha.denom() as f64;
                    (e.alpha.to_string(), e.source.to_string(), f6((n as f64).powf(2.0 - a)))
                }
                None => (String::new(), String::new(), String::new()),
            };
            table.row(vec![
                n.to_string(),
                spec.label(),
                method_name.into(),
                value,
                witness,
                alpha,
                source,
                reference,
                elapsed.to_string(),
                status.into(),
            ]);
        }
    }
    if let Some(path) = &c.cache {
        std::fs::write(path, serde_json::to_string_pretty(&cache).expect("cache serializes") + "\n")?;
    }
    let summary = json!({ "computed": computed, "skipped": skipped, "witnesses_verified": pass });
    Ok(Outcome { records_csv: table.finish(), summary, pass })
}

/// Shallowest depth whose cells are fine enough for `eps`; annulus masses
/// are taken on that cloud to keep the pair count manageable.
fn mass_cloud(spec: &FractalSpec, eps: f64, limits: &Limits) -> Result<PointCloud, AdregError> {
    let depth = (0..=spec.depth).find(|&m| 4.0 * spec.lambda.powi(m as i32) <= eps).unwrap_or(spec.depth);
    cantor_product_with(&FractalSpec { depth, ..*spec }, limits)
}

/// Nets above this many point-center pairs are not re-verified by brute
/// force during a scan.
const VERIFY_PAIR_CAP: usize = 200_000_000;

pub(super) fn adreg_scan(c: &AdregScan, limits: &Limits) -> Result<Outcome, ExperimentError> {
    let mut table = Table::new(&[
        "row", "d", "lambda", "depth", "s", "eps", "t", "centers", "edges", "value", "detail",
    ]);
    let graphs: Vec<(String, Graph)> = c.graphs.iter().map(|g| Ok((g.label(), g.build()?))).collect::<Result<_, ExperimentError>>()?;
    let search = SubgraphSearch::new().budget(c.budget);
    let mut pass = true;
    let mut spec_summaries = Vec::new();
    for spec in &c.specs {
        let cloud = cantor_product_with(spec, limits)?;
        let diam = cloud.diameter();
        let s = spec.s();
        let head = |row: &str, eps: f64, t: Option<f64>| -> Vec<String> {
            vec![
                row.to_string(),
                spec.d.to_string(),
                spec.lambda.to_string(),
                spec.depth.to_string(),
                f6(s),
                format!("{eps:.8}"),
                t.map(|t| format!("{t:.8}")).unwrap_or_default(),
            ]
        };
        let eps_list: Vec<f64> = c.eps_exponents.iter().map(|&k| diam / 2f64.powi(k as i32)).collect();
        let t_list: Vec<f64> = c.t_fractions.iter().map(|f| f * diam).collect();
        let mut edges_by_t: Vec<Vec<usize>> = vec![Vec::new(); t_list.len()];
        let mut nets_ok = true;
        let mut witnesses = 0;
        for &eps in &eps_list {
            let net = greedy_net(&cloud, eps, s);
            let verified = if cloud.len().saturating_mul(net.len()) <= VERIFY_PAIR_CAP {
                let ok = net.verify(&cloud).ok();
                nets_ok &= ok;
                if ok { "verified" } else { "failed" }
            } else {
                "unchecked"
            };
            let mut row = head("net", eps, None);
            row.extend([net.len().to_string(), String::new(), f6(net.n_eps_s), verified.into()]);
            table.row(row);

            let coarse = mass_cloud(spec, eps, limits)?;
            let centers = net.points(&cloud);
            let mut best: Option<(f64, f64)> = None;
            for (ti, &t) in t_list.iter().enumerate() {
                let stats = annulus_stats(&coarse, &centers, t, eps, c.band);
                let q: Vec<String> = stats.quantiles.iter().map(|m| format!("{:.4}", m / eps)).collect();
                let mut row = head("annulus", eps, Some(t));
                row.extend([net.len().to_string(), String::new(), f6(stats.qualifying_fraction), q.join(";")]);
                table.row(row);
                if best.is_none_or(|(_, f)| stats.qualifying_fraction > f) {
                    best = Some((t, stats.qualifying_fraction));
                }
                let h = approx_distance_graph(&cloud, &net, t);
                edges_by_t[ti].push(h.edge_count());
                let mut row = head("edges", eps, Some(t));
                row.extend([net.len().to_string(), h.edge_count().to_string(), f6(2.0 * h.edge_count() as f64 / net.len() as f64), String::new()]);
                table.row(row);
            }
            if let Some((t, _)) = best {
                for (name, g) in &graphs {
                    let (value, detail) = match find_approximation(&cloud, &net, g, t, &search) {
                        Ok(Some(a)) => {
                            witnesses += 1;
                            ("1".to_string(), format!("{name}:{}", a.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";")))
                        }
                        Ok(None) => ("0".to_string(), format!("{name}:absent")),
                        Err(_) => (String::new(), format!("{name}:budget")),
                    };
                    let mut row = head("approx", eps, Some(t));
                    row.extend([net.len().to_string(), String::new(), value, detail]);
                    table.row(row);
                }
            }
        }
        let xs: Vec<f64> = eps_list.iter().map(|e| (1.0 / e).ln()).collect();
        let mut slopes = Vec::new();
        for (ti, &t) in t_list.iter().enumerate() {
            let edges = &edges_by_t[ti];
            let (value, detail) = if xs.len() < 3 {
                (String::new(), "too-few-scales".to_string())
            } else if edges.contains(&0) {
                (String::new(), "degenerate-fit".to_string())
            } else {
                let ys: Vec<f64> = edges.iter().map(|&e| (e as f64).ln()).collect();
                match crate::adreg::least_squares_slope(&xs, &ys) {
                    Some(slope) => {
                        slopes.push(json!({"t": t, "slope": slope}));
                        (f6(slope), format!("predicted={}", f6(2.0 * s - 1.0)))
                    }
                    None => (String::new(), "degenerate-fit".to_string()),
                }
            };
            let mut row = head("scaling", f64::NAN, Some(t));
            row[5] = String::new();
            row.extend([String::new(), String::new(), value, detail]);
            table.row(row);
        }
        pass &= nets_ok;
        spec_summaries.push(json!({
            "d": spec.d,
            "lambda": spec.lambda,
            "depth": spec.depth,
            "s": s,
            "predicted_slope": 2.0 * s - 1.0,
            "below_threshold": s < 0.5,
            "slopes": slopes,
            "nets_ok": nets_ok,
            "witnesses": witnesses,
        }));
    }
    let summary = json!({ "specs": spec_summaries, "pass": pass });
    Ok(Outcome { records_csv: table.finish(), summary, pass })
}

pub(super) fn load_points(source: &PointSource, seed: u64, limits: &Limits) -> Result<PointSet, ExperimentError> {
    Ok(match source {
        PointSource::All { q, d } => all_points_with(&field_of_order(*q, limits)?, *d, limits)?,
        PointSource::Random { q, d, size } => {
            let field = field_of_order(*q, limits)?;
            random_subset_with(&field, *d, size.resolve(*q, *d), derive_seed(seed, &[]), limits)?
        }
        PointSource::File(path) => PointSet::read_text_file(path, limits)?,
    })
}

pub(super) fn distance_set(c: &GraphDistanceSetRun, seed: u64, limits: &Limits) -> Result<Outcome, ExperimentError> {
    let pattern = c.graph.build()?;
    let set = load_points(&c.points, seed, limits)?;
    let field = set.field().clone();
    let search = SubgraphSearch::new().budget(c.budget);
    let gds = graph_distance_set(&set, &pattern, &search, limits)?;
    let mut table = Table::new(&["t", "edges", "verdict", "witness"]);
    for v in &gds.per_t {
        let (verdict, witness) = match &v.verdict {
            Verdict::Contained(w) => ("contained", w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";")),
            Verdict::Absent => ("absent", String::new()),
            Verdict::Indeterminate => ("indeterminate", String::new()),
        };
        table.row(vec![field.format(v.t), v.edges.to_string(), verdict.into(), witness]);
    }
    let coverage = gds.coverage();
    let summary = json!({
        "q": field.q(),
        "d": set.dim(),
        "size": set.len(),
        "graph": c.graph.label(),
        "members": gds.members().iter().map(|&t| field.format(t)).collect::<Vec<_>>(),
        "coverage": format!("{coverage:?}").to_lowercase(),
    });
    Ok(Outcome { records_csv: table.finish(), summary, pass: coverage != Coverage::Partial })
}
