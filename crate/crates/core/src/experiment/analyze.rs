use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{StatSelection, Tolerances, TOOL_VERSION};
use super::sample::parse_csv;
use super::svg::porter_thomas_histogram;
use crate::error::{Error, Result};
use crate::stats::{
    anticonc_fraction, ks_porter_thomas, moments_reports, paley_zygmund_check, ProbSample, Report, SampleMeta,
};

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Statistics to compute; all of them when none is selected.
    pub statistics: StatSelection,
    pub tolerances: Tolerances,
    pub svg: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    /// Hash of the analyzed CSV text.
    pub input_hash: String,
    /// Hash of the config that produced the CSV, when embedded.
    pub source_config_hash: Option<String>,
    pub ensemble: String,
    pub n: usize,
    pub count: usize,
    pub tolerances: Tolerances,
    pub reports: Vec<Report>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOutput {
    pub report: AnalysisReport,
    pub svg: Option<String>,
}

pub fn cmd_analyze(csv: &str, opts: &AnalyzeOptions) -> Result<AnalyzeOutput> {
    let parsed = parse_csv(csv)?;
    let first = &parsed.rows[0];
    if let Some(bad) = parsed
        .rows
        .iter()
        .find(|r| r.n != first.n || r.ensemble != first.ensemble)
    {
        return Err(Error::Schema(format!(
            "mixed samples: trial {} has ensemble {} n {}, first row has {} n {}",
            bad.trial, bad.ensemble, bad.n, first.ensemble, first.n
        )));
    }
    if first.n > 62 {
        return Err(Error::Schema(format!("n = {} is out of range", first.n)));
    }
    let meta = SampleMeta {
        ensemble: first.ensemble.clone(),
        n: first.n,
        depth: first.depth,
        seed: None,
    };
    let dim = 1u64 << first.n;
    let sample = ProbSample::new(meta, dim, parsed.rows.iter().map(|r| r.p).collect())?;
    let sel = if opts.statistics.any() {
        opts.statistics.clone()
    } else {
        StatSelection::all()
    };
    let tol = opts.tolerances;
    let mut reports = Vec::new();
    if sel.moments {
        reports.extend(moments_reports(&sample)?);
    }
    if sel.anticonc {
        reports.push(anticonc_fraction(&sample, tol.alpha, tol.epsilon)?);
    }
    if sel.ks_pt {
        reports.push(ks_porter_thomas(&sample)?);
    }
    if sel.pz {
        reports.push(paley_zygmund_check(&sample, tol.alpha)?);
    }
    let svg = opts.svg.then(|| porter_thomas_histogram(sample.values(), dim));
    Ok(AnalyzeOutput {
        report: AnalysisReport {
            tool_version: TOOL_VERSION.to_string(),
            input_hash: hex::encode(Sha256::digest(csv.as_bytes())),
            source_config_hash: parsed.config_hash,
            ensemble: first.ensemble.clone(),
            n: first.n,
            count: sample.len(),
            tolerances: tol,
            reports,
        },
        svg,
    })
}
