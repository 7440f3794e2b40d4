use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::ensembles::{sample_brickwork_circuit, BrickworkSpec};
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::statevector::State;

use super::anticonc::{fraction_at_least, theorem1_bound, wilson_interval, WILSON_Z_99};
use super::moments::empirical_moments;
use super::report::{Report, Verdict};

/// Threshold `alpha` of the scan's anticoncentration fraction `Pr(p >= alpha/N)`.
pub const SCAN_ALPHA: f64 = 0.5;
/// `|delta_2|` at or below which a scan row counts as converged.
pub const SCAN_DELTA2_TOL: f64 = 0.1;

const MIN_TRIALS: usize = 100;

/// `delta_2 = E[p^2] N(N+1)/2 - 1`, zero for a state 2-design.
pub fn delta2(second_moment: f64, dim: u64) -> f64 {
    let n = dim as f64;
    second_moment * n * (n + 1.0) / 2.0 - 1.0
}

/// Estimates `delta_2` from `trials` draws of `p = |<x0|U|0>|^2`. Trial `t`
/// uses substream `t` of `rng`, so the result is independent of thread count.
/// Passes iff `|delta_2|` is within 3 standard errors of zero.
pub fn state_2design_diagnostic<F>(sampler: F, dim: u64, trials: usize, rng: &Rng) -> Result<Report>
where
    F: Fn(&mut Rng) -> Result<f64> + Sync,
{
    if trials < MIN_TRIALS {
        return Err(Error::Input(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let values = (0..trials)
        .into_par_iter()
        .map(|t| sampler(&mut rng.substream(t as u64)))
        .collect::<Result<Vec<f64>>>()?;
    let m = empirical_moments(&values)?;
    let d = delta2(m.second, dim);
    let n = dim as f64;
    let se = m.se_second * n * (n + 1.0) / 2.0;
    Ok(Report::new("delta2", d, Verdict::from_bool(d.abs() <= 3.0 * se))
        .with_se(se)
        .with_reference(0.0)
        .param("mean", m.mean)
        .param("second_moment", m.second)
        .param("trials", trials as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub depth: usize,
    pub delta2: f64,
    pub delta2_se: f64,
    /// `Pr(p >= SCAN_ALPHA / N)` at a uniformly random `x`.
    pub frac: f64,
    pub se: f64,
    pub verdict: Verdict,
}

/// One row per depth: `delta_2` from `p` at `x = 0` and the anticoncentration
/// fraction at a random `x`, both from the same circuits. A row passes when
/// `|delta_2| <= 0.1` and the Wilson 99% lower bound of the fraction reaches
/// `theorem1_bound(0.5, epsilon)`.
pub fn design_convergence_scan(
    template: &BrickworkSpec,
    depths: &[usize],
    trials: usize,
    rng: &Rng,
) -> Result<Vec<ScanRow>> {
    if depths.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Input("depths must be sorted ascending".into()));
    }
    if trials < 2 {
        return Err(Error::Input("need at least 2 trials".into()));
    }
    template.validate()?;
    let n = template.n;
    let dim = 1u64 << n;
    let bound = theorem1_bound(SCAN_ALPHA, template.epsilon)?;
    depths
        .iter()
        .enumerate()
        .map(|(k, &depth)| {
            let spec = BrickworkSpec {
                depth,
                ..template.clone()
            };
            let base = rng.substream(k as u64);
            let pairs = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut r = base.substream(t as u64);
                    let c = sample_brickwork_circuit(&spec, &mut r)?;
                    let mut s = State::zero(n)?;
                    s.apply_circuit(&c)?;
                    let x = Bitstring::from_index(n, r.below(dim) as usize);
                    Ok((s.probability_at(0), s.probability(&x)?))
                })
                .collect::<Result<Vec<(f64, f64)>>>()?;
            let (p0, px): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let m = empirical_moments(&p0)?;
            let nn = dim as f64;
            let d2 = delta2(m.second, dim);
            let thr = SCAN_ALPHA / nn;
            let frac = fraction_at_least(&px, thr);
            let hits = px.iter().filter(|&&p| p >= thr).count();
            let (lo, _) = wilson_interval(hits, trials, WILSON_Z_99);
            Ok(ScanRow {
                depth,
                delta2: d2,
                delta2_se: m.se_second * nn * (nn + 1.0) / 2.0,
                frac,
                se: (frac * (1.0 - frac) / trials as f64).sqrt(),
                verdict: Verdict::from_bool(d2.abs() <= SCAN_DELTA2_TOL && lo >= bound),
            })
        })
        .collect()
}

/// CSV with columns `depth,delta2,frac,se,verdict`.
pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("depth,delta2,frac,se,verdict\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e},{}\n",
            r.depth, r.delta2, r.frac, r.se, r.verdict
        ));
    }
    out
}
