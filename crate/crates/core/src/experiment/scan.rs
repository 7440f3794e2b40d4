use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::TOOL_VERSION;
use crate::ensembles::{BrickworkSpec, GateSource};
use crate::error::Result;
use crate::rng::Rng;
use crate::stats::{design_convergence_scan, scan_to_csv, ScanRow, SCAN_DELTA2_TOL};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanOptions {
    pub n: usize,
    pub depths: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub source: GateSource,
    pub epsilon: f64,
}

impl ScanOptions {
    /// Depths `{0, n, 4n, 16n}`.
    pub fn standard(n: usize, trials: usize, seed: u64) -> Self {
        Self {
            n,
            depths: vec![0, n, 4 * n, 16 * n],
            trials,
            seed,
            source: GateSource::HaarU4,
            epsilon: 0.1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanOutput {
    pub tool_version: String,
    pub config_hash: String,
    pub options: ScanOptions,
    pub rows: Vec<ScanRow>,
    /// Smallest scanned depth with `|delta_2| <= 0.1`.
    pub first_converged_depth: Option<usize>,
    /// `delta_2` strictly decreasing along the scanned depths.
    pub delta2_strictly_decreasing: bool,
}

impl ScanOutput {
    pub fn csv(&self) -> String {
        format!(
            "# tool_version: {TOOL_VERSION}\n# config_hash: {}\n{}",
            self.config_hash,
            scan_to_csv(&self.rows)
        )
    }
}

pub fn cmd_scan(opts: &ScanOptions) -> Result<ScanOutput> {
    let template = BrickworkSpec {
        n: opts.n,
        depth: 0,
        source: opts.source.clone(),
        epsilon: opts.epsilon,
    };
    let rows = design_convergence_scan(&template, &opts.depths, opts.trials, &Rng::new(opts.seed))?;
    let first_converged_depth = rows.iter().find(|r| r.delta2.abs() <= SCAN_DELTA2_TOL).map(|r| r.depth);
    let delta2_strictly_decreasing = rows.windows(2).all(|w| w[1].delta2 < w[0].delta2);
    let config_hash = hex::encode(Sha256::digest(serde_json::to_string(opts)?.as_bytes()));
    Ok(ScanOutput {
        tool_version: TOOL_VERSION.to_string(),
        config_hash,
        options: opts.clone(),
        rows,
        first_converged_depth,
        delta2_strictly_decreasing,
    })
}
