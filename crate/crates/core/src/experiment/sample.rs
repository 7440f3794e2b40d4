use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{EnsembleSpec, ExperimentConfig, TOOL_VERSION};
use crate::bits::Bitstring;
use crate::ensembles::{
    sample_brickwork_circuit, sample_dense_iqp, sample_diagonal_circuit, BrickworkSpec, DiagonalSpec,
};
use crate::error::{Error, Result};
use crate::quench::{conditionals_xr, q_ac_distribution, recombine, OutcomeSplit, QuenchInstance};
use crate::random_matrix::{haar_state, haar_via_qr};
use crate::rng::Rng;
use crate::statevector::State;

pub const CSV_HEADER: &str = "trial,ensemble,n,depth,x,p";

/// Above this many qubits the Haar ensemble draws `U|0>` directly instead of
/// factoring a full Ginibre matrix.
const HAAR_QR_MAX_QUBITS: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub trial: usize,
    pub ensemble: String,
    pub n: usize,
    pub depth: Option<usize>,
    pub x: String,
    pub p: f64,
}

/// Output probability of one trial of the ensemble. For the quench ensemble
/// `x` is a uniformly random outcome and `p` is `q_ac(x_R | x_L, beta)`.
fn trial_probability(ensemble: &EnsembleSpec, x: &Bitstring, rng: &mut Rng) -> Result<(Bitstring, f64)> {
    match ensemble {
        EnsembleSpec::Haar { n } => {
            let dim = 1usize << n;
            let p = if *n <= HAAR_QR_MAX_QUBITS {
                haar_via_qr(dim, rng)?[(x.index(), 0)].norm_sqr()
            } else {
                haar_state(dim, rng)[x.index()].norm_sqr()
            };
            Ok((x.clone(), p))
        }
        EnsembleSpec::Brickwork {
            n,
            depth,
            source,
            epsilon,
        } => {
            let spec = BrickworkSpec {
                n: *n,
                depth: *depth,
                source: source.clone(),
                epsilon: *epsilon,
            };
            let c = sample_brickwork_circuit(&spec, rng)?;
            let mut s = State::zero(*n)?;
            s.apply_circuit_unchecked(&c)?;
            Ok((x.clone(), s.probability(x)?))
        }
        EnsembleSpec::Iqp { m } => Ok((x.clone(), sample_dense_iqp(*m, rng)?.output_probability(x)?)),
        EnsembleSpec::Diagonal { n, structure } => {
            let spec = match structure {
                Some(st) => DiagonalSpec {
                    n: *n,
                    structure: st.clone(),
                },
                None => DiagonalSpec::complete(*n),
            };
            let c = sample_diagonal_circuit(&spec, rng)?;
            let mut s = State::plus(*n)?;
            s.apply_circuit_unchecked(&c)?;
            // X-basis readout; in the Z basis every outcome has weight 1/N
            s.hadamard_all();
            Ok((x.clone(), s.probability(x)?))
        }
        EnsembleSpec::Quench { m, conventions } => {
            let inst = QuenchInstance::sample(*m, *conventions, rng)?;
            let dist = q_ac_distribution(&inst)?;
            let lattice = inst.lattice;
            let left = lattice.n() - lattice.m();
            let l = rng.below(1u64 << left) as usize;
            let r = rng.below(1u64 << m) as usize;
            let cond = conditionals_xr(&lattice, &dist)?;
            let full = recombine(
                &lattice,
                &OutcomeSplit {
                    x_r: Bitstring::from_index(*m, r),
                    x_l: Bitstring::from_index(left, l),
                },
            )?;
            Ok((full, cond[l][r]))
        }
    }
}

/// Runs every trial; trial `t` uses substream `t` of the master seed, so rows
/// are identical for any worker count.
pub fn sample_rows(config: &ExperimentConfig) -> Result<Vec<SampleRow>> {
    config.validate()?;
    let q = config.ensemble.outcome_qubits();
    let x: Bitstring = match &config.x {
        Some(s) => s.parse()?,
        None => Bitstring::zeros(q),
    };
    let master = Rng::new(config.seed);
    let name = config.ensemble.name();
    let depth = config.ensemble.depth();
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = master.substream(t as u64);
            let (xt, p) = trial_probability(&config.ensemble, &x, &mut rng)?;
            Ok(SampleRow {
                trial: t,
                ensemble: name.to_string(),
                n: q,
                depth,
                x: xt.to_string(),
                p,
            })
        })
        .collect()
}

pub fn rows_to_csv(config: &ExperimentConfig, rows: &[SampleRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# tool_version: {TOOL_VERSION}\n"));
    out.push_str(&format!("# config_hash: {}\n", config.hash()));
    out.push_str(&format!(
        "# config: {}\n",
        serde_json::to_string(config).expect("config serializes")
    ));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let depth = r.depth.map(|d| d.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{:.16e}\n",
            r.trial, r.ensemble, r.n, depth, r.x, r.p
        ));
    }
    out
}

/// Samples the configured ensemble and renders the CSV.
pub fn cmd_sample(config: &ExperimentConfig) -> Result<String> {
    let rows = sample_rows(config)?;
    Ok(rows_to_csv(config, &rows))
}

/// Parsed CSV: the embedded config hash (if any) and the rows.
#[derive(Clone, Debug)]
pub struct ParsedCsv {
    pub config_hash: Option<String>,
    pub rows: Vec<SampleRow>,
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv> {
    let mut config_hash = None;
    let mut header_seen = false;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(h) = comment.trim().strip_prefix("config_hash:") {
                config_hash = Some(h.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            if line != CSV_HEADER {
                return Err(Error::Schema(format!("expected header {CSV_HEADER:?}, found {line:?}")));
            }
            header_seen = true;
            continue;
        }
        let schema = |what: &str| Error::Schema(format!("line {}: {what}", lineno + 1));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(schema(&format!("expected 6 fields, found {}", f.len())));
        }
        let row = SampleRow {
            trial: f[0].parse().map_err(|_| schema("bad trial"))?,
            ensemble: f[1].to_string(),
            n: f[2].parse().map_err(|_| schema("bad n"))?,
            depth: if f[3].is_empty() {
                None
            } else {
                Some(f[3].parse().map_err(|_| schema("bad depth"))?)
            },
            x: f[4].to_string(),
            p: f[5].parse().map_err(|_| schema("bad p"))?,
        };
        if !row.x.chars().all(|c| c == '0' || c == '1') {
            return Err(schema("x is not a bitstring"));
        }
        rows.push(row);
    }
    if !header_seen {
        return Err(Error::Schema("missing CSV header".into()));
    }
    if rows.is_empty() {
        return Err(Error::Schema("no data rows".into()));
    }
    Ok(ParsedCsv { config_hash, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::GateSource;

    #[test]
    fn row_count_and_determinism() {
        let c = ExperimentConfig::new(EnsembleSpec::Haar { n: 3 }, 1000, 7);
        let a = cmd_sample(&c).unwrap();
        assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 1001);
        assert_eq!(a, cmd_sample(&c).unwrap());
    }

    #[test]
    fn thread_count_does_not_matter() {
        let c = ExperimentConfig::new(
            EnsembleSpec::Brickwork {
                n: 4,
                depth: 6,
                source: GateSource::HaarU4,
                epsilon: 0.1,
            },
            50,
            3,
        );
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| cmd_sample(&c)).unwrap();
        let b = four.install(|| cmd_sample(&c)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_round_trip() {
        let c = ExperimentConfig::new(EnsembleSpec::Iqp { m: 3 }, 20, 1);
        let rows = sample_rows(&c).unwrap();
        let parsed = parse_csv(&rows_to_csv(&c, &rows)).unwrap();
        assert_eq!(parsed.rows, rows);
        assert_eq!(parsed.config_hash.unwrap(), c.hash());
    }

    #[test]
    fn every_ensemble_runs() {
        for e in [
            EnsembleSpec::Haar { n: 9 },
            EnsembleSpec::Diagonal { n: 3, structure: None },
            EnsembleSpec::Quench {
                m: 1,
                conventions: Default::default(),
            },
            EnsembleSpec::Brickwork {
                n: 5,
                depth: 4,
                source: "bis".parse().unwrap(),
                epsilon: 0.1,
            },
        ] {
            let rows = sample_rows(&ExperimentConfig::new(e, 5, 2)).unwrap();
            assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r.p)));
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_csv("a,b\n1,2\n"), Err(Error::Schema(_))));
        let bad = format!("{CSV_HEADER}\n0,haar,3,,000\n");
        assert!(matches!(parse_csv(&bad), Err(Error::Schema(_))));
        let bad = format!("{CSV_HEADER}\n0,haar,3,,000,zz\n");
        assert!(matches!(parse_csv(&bad), Err(Error::Schema(_))));
    }
}
