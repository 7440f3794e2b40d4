use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use anticonc::ensembles::GateSource;
use anticonc::experiment::verify::{run_suite, Suite};
use anticonc::experiment::{
    cmd_analyze, cmd_quench, cmd_sample, cmd_scan, AnalyzeOptions, EnsembleSpec, ExperimentConfig, QuenchOptions,
    ScanOptions, StatSelection, Tolerances,
};
use anticonc::quench::{ColoringParity, PinkPlacement, QuenchConventions};
use anticonc::{Error, Result};

#[derive(Parser)]
#[command(
    name = "anticonc",
    version,
    about = "Anticoncentration experiments on random circuits"
)]
struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true, env = "ANTICONC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample output probabilities of a circuit ensemble to CSV.
    Sample(SampleArgs),
    /// Compute statistics of a sample CSV.
    Analyze(AnalyzeArgs),
    /// Run the quench architecture exactly (m <= 3).
    Quench(QuenchArgs),
    /// Scan the 2-design deviation of brickwork circuits over depth.
    ScanDepth(ScanArgs),
    /// Run an acceptance suite (fast or full).
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Clone, Default)]
struct ConventionArgs {
    /// Checkerboard parity colored blue (odd or even).
    #[arg(long)]
    coloring_parity: Option<ColoringParity>,
    /// Column index base for the sublattice rule.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    column_base: Option<u8>,
    /// Boundary columns holding classical inputs (left or both).
    #[arg(long)]
    pink: Option<PinkPlacement>,
}

impl ConventionArgs {
    fn apply(&self, mut c: QuenchConventions) -> QuenchConventions {
        if let Some(p) = self.coloring_parity {
            c.coloring_parity = p;
        }
        if let Some(b) = self.column_base {
            c.column_base = b;
        }
        if let Some(p) = self.pink {
            c.pink = p;
        }
        c
    }
}

#[derive(Args)]
struct SampleArgs {
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// haar, brickwork, iqp, diagonal or quench.
    #[arg(long)]
    ensemble: Option<String>,
    #[arg(long)]
    qubits: Option<usize>,
    /// Width parameter for iqp and quench (defaults to --qubits).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// Brick source: haar, bis or bis-inv.
    #[arg(long)]
    source: Option<GateSource>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fixed outcome bitstring (default all zeros).
    #[arg(long)]
    x: Option<String>,
    #[command(flatten)]
    conventions: ConventionArgs,
    /// Output CSV path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// CSV written by `sample`.
    input: PathBuf,
    #[arg(long)]
    moments: bool,
    #[arg(long)]
    anticonc: bool,
    #[arg(long)]
    ks_pt: bool,
    #[arg(long)]
    pz: bool,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Write a histogram of N p with the Porter-Thomas density.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Output JSON path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QuenchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also compare exp(-i H_ac) with the CZ product.
    #[arg(long)]
    verify_hamiltonian: bool,
    #[command(flatten)]
    conventions: ConventionArgs,
    /// Output JSON report path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Conditional probabilities CSV path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    qubits: usize,
    /// Comma-separated depths (default 0,n,4n,16n).
    #[arg(long, value_delimiter = ',')]
    depths: Option<Vec<usize>>,
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "haar")]
    source: GateSource,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Output CSV path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output JSON path.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ensemble_from_flags(name: &str, a: &SampleArgs, base: Option<&EnsembleSpec>) -> Result<EnsembleSpec> {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| Error::Input(format!("--{what} is required")));
    let width = a.m.or(a.qubits);
    let conv = match base {
        Some(EnsembleSpec::Quench { conventions, .. }) => *conventions,
        _ => QuenchConventions::default(),
    };
    Ok(match name {
        "haar" => EnsembleSpec::Haar {
            n: need(a.qubits, "qubits")?,
        },
        "brickwork" => EnsembleSpec::Brickwork {
            n: need(a.qubits, "qubits")?,
            depth: need(a.depth, "depth")?,
            source: a.source.clone().unwrap_or(GateSource::HaarU4),
            epsilon: a.epsilon.unwrap_or(0.1),
        },
        "iqp" => EnsembleSpec::Iqp { m: need(width, "m")? },
        "diagonal" => EnsembleSpec::Diagonal {
            n: need(a.qubits, "qubits")?,
            structure: None,
        },
        "quench" => EnsembleSpec::Quench {
            m: need(width, "m")?,
            conventions: a.conventions.apply(conv),
        },
        other => return Err(Error::Input(format!("unknown ensemble {other:?}"))),
    })
}

/// Applies individual flags on top of a config-file ensemble.
fn override_ensemble(mut e: EnsembleSpec, a: &SampleArgs) -> EnsembleSpec {
    match &mut e {
        EnsembleSpec::Haar { n } | EnsembleSpec::Diagonal { n, .. } => {
            if let Some(q) = a.qubits {
                *n = q;
            }
        }
        EnsembleSpec::Brickwork {
            n,
            depth,
            source,
            epsilon,
        } => {
            if let Some(q) = a.qubits {
                *n = q;
            }
            if let Some(d) = a.depth {
                *depth = d;
            }
            if let Some(s) = &a.source {
                *source = s.clone();
            }
            if let Some(eps) = a.epsilon {
                *epsilon = eps;
            }
        }
        EnsembleSpec::Iqp { m } => {
            if let Some(w) = a.m.or(a.qubits) {
                *m = w;
            }
        }
        EnsembleSpec::Quench { m, conventions } => {
            if let Some(w) = a.m.or(a.qubits) {
                *m = w;
            }
            *conventions = a.conventions.apply(*conventions);
        }
    }
    e
}

fn resolve_sample_config(a: &SampleArgs) -> Result<ExperimentConfig> {
    let file = match &a.config {
        Some(p) => Some(ExperimentConfig::from_json(&fs::read_to_string(p)?)?),
        None => None,
    };
    let ensemble = match (&a.ensemble, &file) {
        (Some(name), f) => ensemble_from_flags(name, a, f.as_ref().map(|c| &c.ensemble))?,
        (None, Some(f)) => override_ensemble(f.ensemble.clone(), a),
        (None, None) => return Err(Error::Input("--ensemble or --config is required".into())),
    };
    let mut config = match file {
        Some(f) => ExperimentConfig { ensemble, ..f },
        None => ExperimentConfig::new(
            ensemble,
            a.trials.ok_or_else(|| Error::Input("--trials is required".into()))?,
            a.seed.ok_or_else(|| Error::Input("--seed is required".into()))?,
        ),
    };
    if let Some(t) = a.trials {
        config.trials = t;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    if a.x.is_some() {
        config.x = a.x.clone();
    }
    if let Some(o) = &a.out {
        config.output.csv = Some(o.clone());
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Sample(a) => {
            let config = resolve_sample_config(&a)?;
            let csv = cmd_sample(&config)?;
            emit(config.output.csv.as_deref(), &csv)?;
        }
        Command::Analyze(a) => {
            let csv = fs::read_to_string(&a.input)?;
            let opts = AnalyzeOptions {
                statistics: StatSelection {
                    moments: a.moments,
                    anticonc: a.anticonc,
                    ks_pt: a.ks_pt,
                    pz: a.pz,
                },
                tolerances: Tolerances {
                    alpha: a.alpha,
                    epsilon: a.epsilon,
                },
                svg: a.svg.is_some(),
            };
            let out = cmd_analyze(&csv, &opts)?;
            if let (Some(path), Some(svg)) = (&a.svg, &out.svg) {
                let hash = out.report.source_config_hash.as_deref().unwrap_or("none");
                let stamped = svg.replacen(
                    "<rect",
                    &format!("<!-- {} config_hash {hash} -->\n<rect", out.report.tool_version),
                    1,
                );
                fs::write(path, stamped)?;
            }
            emit(a.out.as_deref(), &(serde_json::to_string_pretty(&out.report)? + "\n"))?;
        }
        Command::Quench(a) => {
            let opts = QuenchOptions {
                m: a.m,
                trials: a.trials,
                seed: a.seed,
                conventions: a.conventions.apply(QuenchConventions::default()),
                verify_hamiltonian: a.verify_hamiltonian,
            };
            let out = cmd_quench(&opts)?;
            if let Some(p) = &a.csv {
                fs::write(p, out.conditionals_csv())?;
            }
            emit(a.out.as_deref(), &(serde_json::to_string_pretty(&out.report)? + "\n"))?;
        }
        Command::ScanDepth(a) => {
            let n = a.qubits;
            let opts = ScanOptions {
                depths: a.depths.clone().unwrap_or_else(|| vec![0, n, 4 * n, 16 * n]),
                source: a.source.clone(),
                epsilon: a.epsilon,
                ..ScanOptions::standard(n, a.trials, a.seed)
            };
            let out = cmd_scan(&opts)?;
            if let Some(p) = &a.json {
                fs::write(p, serde_json::to_string_pretty(&out)? + "\n")?;
            }
            emit(a.out.as_deref(), &out.csv())?;
        }
        Command::Verify { suite } => {
            let outcome = run_suite(suite, |o| eprintln!("{o}"));
            let ok = outcome.passed();
            println!("{}", outcome.summary());
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
