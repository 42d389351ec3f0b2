//! Command-line front end for the experiment runners.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 on a
//! config or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use distgraph::adreg::FractalSpec;
use distgraph::experiments::{
    self, AdregScan, Experiment, ExperimentConfig, ExperimentError, ExtremalMethod, ExtremalTable, GraphDistanceSetRun, GraphSpec, IrSweep,
    PointSource, SizeRule, Threshold,
};
use distgraph::Limits;

#[derive(Parser)]
#[command(name = "distgraph", version, about = "Distance-graph experiments over finite fields and fractal surrogates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact remainder-bound check on random subsets of F_q^d.
    IrSweep {
        #[command(flatten)]
        common: Common,
        /// Field orders.
        #[arg(long = "q", value_delimiter = ',')]
        fields: Vec<u32>,
        #[arg(long = "dim", value_delimiter = ',')]
        dims: Vec<usize>,
        /// Size rules such as `20`, `q^1.5`, `0.5*q^d`, `q^((d+1)/2)`.
        #[arg(long = "size", value_delimiter = ',')]
        sizes: Vec<SizeRule>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Empirical full-coverage rate of the G-distance set against set size.
    Threshold {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long = "dim")]
        d: Option<usize>,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "size", value_delimiter = ',')]
        sizes: Vec<SizeRule>,
        #[arg(long)]
        trials: Option<usize>,
        /// Node budget per containment search.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Table of extremal numbers ex(n, G).
    ExtremalTable {
        #[command(flatten)]
        common: Common,
        /// Catalog names, repeatable or comma separated.
        #[arg(long = "graph", value_delimiter = ',')]
        graphs: Vec<String>,
        #[arg(long = "graph-file")]
        graph_files: Vec<PathBuf>,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// `exhaustive`, `branch-bound` or `auto`.
        #[arg(long, value_parser = parse_method)]
        method: Option<ExtremalMethod>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Nets, annulus masses, edge scaling and approximations on a Cantor product.
    AdregScan {
        #[command(flatten)]
        common: Common,
        #[arg(long = "dim")]
        d: Option<usize>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        depth: Option<usize>,
        /// Scales `eps = diam * 2^-k`.
        #[arg(long = "eps-exp", value_delimiter = ',')]
        eps_exponents: Vec<u32>,
        /// Distances `t = diam * f`.
        #[arg(long = "t-frac", value_delimiter = ',')]
        t_fractions: Vec<f64>,
        #[arg(long = "graph", value_delimiter = ',')]
        graphs: Vec<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The G-distance set of one point set.
    GraphDistanceSet {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        graph: GraphArgs,
        /// Points file; otherwise the points come from `--q` and `--dim`.
        #[arg(long)]
        points_file: Option<PathBuf>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long = "dim")]
        d: Option<usize>,
        /// Random subset of this size; the whole space when omitted.
        #[arg(long)]
        size: Option<SizeRule>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON config; flags given on the command line override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report directory; the records CSV goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GraphArgs {
    /// Catalog name such as `C6`, `Q3`, `S3`.
    #[arg(long)]
    graph: Option<String>,
    /// Graph text file.
    #[arg(long, conflicts_with = "graph")]
    graph_file: Option<PathBuf>,
}

impl GraphArgs {
    fn spec(self) -> Option<GraphSpec> {
        self.graph.map(GraphSpec::Name).or(self.graph_file.map(|file| GraphSpec::File { file }))
    }
}

fn parse_method(text: &str) -> Result<ExtremalMethod, String> {
    match text {
        "exhaustive" => Ok(ExtremalMethod::Exhaustive),
        "branch-bound" => Ok(ExtremalMethod::BranchBound),
        "auto" => Ok(ExtremalMethod::Auto),
        _ => Err(format!("unknown method `{text}`")),
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn set_vec<T>(slot: &mut Vec<T>, values: Vec<T>) {
    if !values.is_empty() {
        *slot = values;
    }
}

fn base(common: &Common, kind: &str, default: Experiment) -> Result<ExperimentConfig, ExperimentError> {
    let mut config = match &common.config {
        Some(path) => ExperimentConfig::read_file(path)?,
        None => ExperimentConfig::new(default),
    };
    if config.experiment.kind() != kind {
        return Err(ExperimentError::Config(format!("config is of kind `{}`, expected `{kind}`", config.experiment.kind())));
    }
    set(&mut config.seed, common.seed.map(Some));
    set(&mut config.jobs, common.jobs.map(Some));
    set(&mut config.out, common.out.clone().map(Some));
    Ok(config)
}

fn build(command: Command) -> Result<ExperimentConfig, ExperimentError> {
    Ok(match command {
        Command::IrSweep { common, fields, dims, sizes, trials } => {
            let default = IrSweep {
                fields: vec![3, 5, 7, 9, 11, 13],
                dims: vec![2, 3],
                sizes: vec![SizeRule::QPow { c: 1.0, s: 1.0 }, SizeRule::QDim(1.0), SizeRule::Fraction(0.5), SizeRule::Fraction(1.0)],
                trials: 5,
            };
            let mut config = base(&common, "ir-sweep", Experiment::IrSweep(default))?;
            if let Experiment::IrSweep(c) = &mut config.experiment {
                set_vec(&mut c.fields, fields);
                set_vec(&mut c.dims, dims);
                set_vec(&mut c.sizes, sizes);
                set(&mut c.trials, trials);
            }
            config
        }
        Command::Threshold { common, q, d, graph, sizes, trials, budget } => {
            let default = Threshold {
                q: 9,
                d: 2,
                graph: GraphSpec::Name("C6".into()),
                sizes: [1.0, 1.25, 1.5, 1.75, 2.0].iter().map(|&s| SizeRule::QPow { c: 1.0, s }).collect(),
                trials: 30,
                budget: None,
            };
            let mut config = base(&common, "threshold", Experiment::Threshold(default))?;
            if let Experiment::Threshold(c) = &mut config.experiment {
                set(&mut c.q, q);
                set(&mut c.d, d);
                set(&mut c.graph, graph.spec());
                set_vec(&mut c.sizes, sizes);
                set(&mut c.trials, trials);
                set(&mut c.budget, budget.map(Some));
            }
            config
        }
        Command::ExtremalTable { common, graphs, graph_files, n_min, n_max, method, cache, budget } => {
            let default = ExtremalTable {
                graphs: vec![GraphSpec::Name("C4".into())],
                n_min: 1,
                n_max: 7,
                method: ExtremalMethod::Auto,
                cache: None,
                budget: None,
            };
            let mut config = base(&common, "extremal-table", Experiment::ExtremalTable(default))?;
            if let Experiment::ExtremalTable(c) = &mut config.experiment {
                let specs: Vec<GraphSpec> =
                    graphs.into_iter().map(GraphSpec::Name).chain(graph_files.into_iter().map(|file| GraphSpec::File { file })).collect();
                set_vec(&mut c.graphs, specs);
                set(&mut c.n_min, n_min);
                set(&mut c.n_max, n_max);
                set(&mut c.method, method);
                set(&mut c.cache, cache.map(Some));
                set(&mut c.budget, budget.map(Some));
            }
            config
        }
        Command::AdregScan { common, d, lambda, depth, eps_exponents, t_fractions, graphs, budget } => {
            let default = AdregScan {
                specs: vec![FractalSpec { d: 2, lambda: 0.45, depth: 10 }],
                eps_exponents: vec![5, 6, 7, 8],
                t_fractions: vec![0.25, 0.5, 0.75],
                graphs: vec![GraphSpec::Name("C6".into())],
                band: Default::default(),
                budget: None,
            };
            let mut config = base(&common, "adreg-scan", Experiment::AdregScan(default))?;
            if let Experiment::AdregScan(c) = &mut config.experiment {
                if d.is_some() || lambda.is_some() || depth.is_some() {
                    let first = c.specs.first().copied().unwrap_or(FractalSpec { d: 2, lambda: 0.45, depth: 10 });
                    c.specs = vec![FractalSpec { d: d.unwrap_or(first.d), lambda: lambda.unwrap_or(first.lambda), depth: depth.unwrap_or(first.depth) }];
                }
                set_vec(&mut c.eps_exponents, eps_exponents);
                set_vec(&mut c.t_fractions, t_fractions);
                set_vec(&mut c.graphs, graphs.into_iter().map(GraphSpec::Name).collect());
                set(&mut c.budget, budget.map(Some));
            }
            config
        }
        Command::GraphDistanceSet { common, graph, points_file, q, d, size, budget } => {
            let default =
                GraphDistanceSetRun { graph: GraphSpec::Name("C4".into()), points: PointSource::All { q: 5, d: 3 }, budget: None };
            let mut config = base(&common, "graph-distance-set", Experiment::GraphDistanceSet(default))?;
            if let Experiment::GraphDistanceSet(c) = &mut config.experiment {
                set(&mut c.graph, graph.spec());
                if let Some(path) = points_file {
                    c.points = PointSource::File(path);
                } else if q.is_some() || d.is_some() || size.is_some() {
                    let (q0, d0) = match c.points {
                        PointSource::All { q, d } | PointSource::Random { q, d, .. } => (q, d),
                        PointSource::File(_) => (5, 3),
                    };
                    let (q, d) = (q.unwrap_or(q0), d.unwrap_or(d0));
                    c.points = match size {
                        Some(size) => PointSource::Random { q, d, size },
                        None => PointSource::All { q, d },
                    };
                }
                set(&mut c.budget, budget.map(Some));
            }
            config
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = build(cli.command).and_then(|config| {
        let report = experiments::run(&config, &Limits::from_env())?;
        match &config.out {
            Some(dir) => {
                report.write(dir)?;
                println!("{}", serde_json::to_string_pretty(&report.summary).expect("summary serializes"));
            }
            None => print!("{}", report.records_csv),
        }
        Ok(report.pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verdict: FAIL");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
