//! Experiment drivers behind the command-line subcommands.

mod analyze;
mod config;
mod quench_run;
mod sample;
mod scan;
mod svg;
pub mod verify;

pub use analyze::{cmd_analyze, AnalysisReport, AnalyzeOptions, AnalyzeOutput};
pub use config::{
    EnsembleSpec, ExperimentConfig, OutputPaths, ResultRecord, StatSelection, Tolerances, MAX_HAAR_QUBITS, TOOL_VERSION,
};
pub use quench_run::{
    cmd_quench, corollary3_report, hamiltonian_cz_deviation, quench_conditional_draws, ConditionalDraw, QuenchOptions,
    QuenchOutput, QuenchReport, COROLLARY3_BOUND,
};
pub use sample::{cmd_sample, parse_csv, rows_to_csv, sample_rows, ParsedCsv, SampleRow, CSV_HEADER};
pub use scan::{cmd_scan, ScanOptions, ScanOutput};
pub use svg::porter_thomas_histogram;
