// End to end: a JSON config, sampled CSV, then the analysis report and a
// histogram.

use anticonc::experiment::{cmd_analyze, cmd_sample, AnalyzeOptions, ExperimentConfig};

const CONFIG: &str = r#"{
  "ensemble": { "kind": "brickwork", "n": 4, "depth": 64 },
  "trials": 2000,
  "seed": 42
}"#;

pub fn run_example() -> anticonc::Result<()> {
    let config = ExperimentConfig::from_json(CONFIG)?;
    let csv = cmd_sample(&config)?;
    println!("config hash {}", config.hash());
    for line in csv.lines().take(6) {
        println!("{line}");
    }

    let out = cmd_analyze(
        &csv,
        &AnalyzeOptions {
            svg: true,
            ..Default::default()
        },
    )?;
    for r in &out.report.reports {
        println!("{r}");
    }
    println!("svg: {} bytes", out.svg.map_or(0, |s| s.len()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
