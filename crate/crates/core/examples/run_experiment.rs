//! Runs a small threshold experiment from a JSON config and writes the report.

use distgraph::experiments::{run, ExperimentConfig};
use distgraph::Limits;

fn main() {
    let text = r#"{
        "kind": "threshold", "q": 5, "d": 2, "graph": "C4",
        "sizes": [{"q_pow": {"c": 1.0, "s": 1.0}}, {"q_pow": {"c": 1.0, "s": 1.5}}, {"fraction": 1.0}],
        "trials": 10, "seed": 7, "jobs": 2
    }"#;
    let config = ExperimentConfig::from_json(text).unwrap();
    let report = run(&config, &Limits::default()).unwrap();
    print!("{}", report.records_csv);
    println!("{}", serde_json::to_string_pretty(&report.summary).unwrap());
    let dir = std::env::temp_dir().join("distgraph-example");
    report.write(&dir).unwrap();
    println!("report written to {}, pass = {}", dir.display(), report.pass);
}
