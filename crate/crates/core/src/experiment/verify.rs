//! The acceptance suites behind `anticonc verify`.
//!
//! `full` runs all twelve criteria. `fast` runs every criterion except the
//! quench-versus-dense-IQP distribution comparison (9), which is expected to
//! fail (see the README).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quench_run::{corollary3_report, hamiltonian_cz_deviation, quench_conditional_draws, COROLLARY3_BOUND};
use super::scan::{cmd_scan, ScanOptions};
use crate::ensembles::{sample_brickwork_circuit, sample_dense_iqp, BrickworkSpec, IqpCircuit};
use crate::error::{Error, Result};
use crate::quench::QuenchConventions;
use crate::random_matrix::{haar_via_gue, haar_via_qr, porter_thomas_quantile};
use crate::rng::Rng;
use crate::statevector::{gate, Circuit, State};
use crate::stats::{
    delta2, empirical_moments, ks_porter_thomas, paley_zygmund_check, theorem1_bound, two_sample_ks_statistic,
    two_sample_threshold, wilson_interval, ProbSample, WILSON_Z_99,
};

const SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Full,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Self::Fast),
            "full" => Ok(Self::Full),
            other => Err(Error::Input(format!("unknown suite {other:?}; expected fast or full"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fast => "fast",
            Self::Full => "full",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<34} {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.seconds
        )
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub in_fast: bool,
    run: fn() -> Result<(bool, String)>,
}

impl Criterion {
    pub fn run(&self) -> CriterionOutcome {
        let start = Instant::now();
        let (passed, detail) = match (self.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CriterionOutcome {
            id: self.id,
            title: self.title.to_string(),
            passed,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, title, in_fast, run| Criterion {
        id,
        title,
        in_fast,
        run,
    };
    vec![
        c(1, "Haar moments N=8", true, c1_haar_moments),
        c(2, "Porter-Thomas KS + calibration", true, c2_porter_thomas),
        c(3, "QR vs GUE construction", true, c3_construction_equivalence),
        c(4, "Theorem 1 bound, brickwork n=6", true, c4_brickwork_bound),
        c(5, "depth monotonicity scan n=6", true, c5_depth_scan),
        c(6, "H_ac vs CZ phases m=1,2", true, c6_hamiltonian),
        c(7, "uniform x_L marginal m=1,2,3", true, c7_marginal),
        c(8, "Corollary 3 fraction m=2", true, c8_corollary3),
        c(9, "quench vs dense IQP KS m=2", false, c9_ensemble_ks),
        c(10, "dense IQP anticoncentration", true, c10_iqp_anticonc),
        c(11, "IQP group laws m=4", true, c11_group_laws),
        c(12, "universal invariants", true, c12_invariants),
    ]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            s.push_str(&o.to_string());
            s.push('\n');
        }
        let ok = self.outcomes.iter().filter(|o| o.passed).count();
        s.push_str(&format!(
            "{} suite: {ok}/{} criteria passed\n",
            self.suite,
            self.outcomes.len()
        ));
        s
    }
}

/// Runs a suite, calling `progress` after each criterion.
pub fn run_suite(suite: Suite, mut progress: impl FnMut(&CriterionOutcome)) -> SuiteOutcome {
    let outcomes = criteria()
        .iter()
        .filter(|c| suite == Suite::Full || c.in_fast)
        .map(|c| {
            let o = c.run();
            progress(&o);
            o
        })
        .collect();
    SuiteOutcome { suite, outcomes }
}

fn par_values(trials: usize, seed: u64, f: impl Fn(&mut Rng) -> Result<f64> + Sync) -> Result<Vec<f64>> {
    let master = Rng::new(seed);
    (0..trials)
        .into_par_iter()
        .map(|t| f(&mut master.substream(t as u64)))
        .collect()
}

fn haar_p00(dim: usize, trials: usize, seed: u64) -> Result<Vec<f64>> {
    par_values(trials, seed, |r| Ok(haar_via_qr(dim, r)?[(0, 0)].norm_sqr()))
}

fn c1_haar_moments() -> Result<(bool, String)> {
    let p = haar_p00(8, 200_000, SEED)?;
    let m = empirical_moments(&p)?;
    let ok1 = (m.mean - 1.0 / 8.0).abs() <= 3.0 * m.se_mean;
    let ok2 = (m.second - 2.0 / 72.0).abs() <= 3.0 * m.se_second;
    Ok((
        ok1 && ok2,
        format!(
            "mean {:.6} (se {:.1e}) vs 0.125; E[p^2] {:.6} (se {:.1e}) vs {:.6}",
            m.mean,
            m.se_mean,
            m.second,
            m.se_second,
            2.0 / 72.0
        ),
    ))
}

fn c2_porter_thomas() -> Result<(bool, String)> {
    let p = haar_p00(8, 200_000, SEED)?;
    let ks = ks_porter_thomas(&ProbSample::from_values("haar", 3, p)?)?;
    let reps = 200;
    let rejected = (0..reps)
        .into_par_iter()
        .map(|k| {
            let mut r = Rng::new(SEED + 1).substream(k);
            let v = (0..10_000)
                .map(|_| porter_thomas_quantile(r.uniform(), 8))
                .collect::<Result<Vec<f64>>>()?;
            Ok(!ks_porter_thomas(&ProbSample::from_values("null", 3, v)?)?.passed())
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&x| x)
        .count();
    let rate = rejected as f64 / reps as f64;
    Ok((
        ks.passed() && rate <= 0.03,
        format!(
            "D {:.5} vs {:.5}; null rejection {rejected}/{reps}",
            ks.estimate,
            ks.reference.unwrap_or(f64::NAN)
        ),
    ))
}

fn c3_construction_equivalence() -> Result<(bool, String)> {
    let a = haar_p00(4, 10_000, SEED + 2)?;
    let b = par_values(10_000, SEED + 3, |r| Ok(haar_via_gue(4, r)?[(0, 0)].norm_sqr()))?;
    let d = two_sample_ks_statistic(&a, &b);
    let thr = two_sample_threshold(a.len(), b.len());
    Ok((d <= thr, format!("D {d:.5} vs {thr:.5}")))
}

fn brickwork_p0(n: usize, depth: usize, trials: usize, seed: u64) -> Result<Vec<f64>> {
    let spec = BrickworkSpec::haar(n, depth);
    par_values(trials, seed, |r| {
        let c = sample_brickwork_circuit(&spec, r)?;
        let mut s = State::zero(n)?;
        s.apply_circuit_unchecked(&c)?;
        Ok(s.probability_at(0))
    })
}

fn c4_brickwork_bound() -> Result<(bool, String)> {
    let n = 6;
    let dim = 1u64 << n;
    let p = brickwork_p0(n, 16 * n, 2000, SEED + 4)?;
    let hits = p.iter().filter(|&&v| v >= 0.5 / dim as f64).count();
    let (lo, _) = wilson_interval(hits, p.len(), WILSON_Z_99);
    let bound = theorem1_bound(0.5, 0.1)?;
    let d2 = delta2(empirical_moments(&p)?.second, dim);
    Ok((
        lo >= bound && d2.abs() <= 0.1,
        format!(
            "frac {:.4} (Wilson lo {lo:.4}) vs {bound:.4}; delta2 {d2:.4}",
            hits as f64 / p.len() as f64
        ),
    ))
}

fn c5_depth_scan() -> Result<(bool, String)> {
    let out = cmd_scan(&ScanOptions::standard(6, 20_000, SEED + 5))?;
    let last = out.rows.last().expect("four rows");
    let ok = out.delta2_strictly_decreasing && last.frac >= 0.5;
    let d: Vec<String> = out
        .rows
        .iter()
        .map(|r| format!("{}:{:.4}", r.depth, r.delta2))
        .collect();
    Ok((
        ok,
        format!(
            "delta2 {}; frac depth0 {:.4} -> depth{} {:.4}",
            d.join(" "),
            out.rows[0].frac,
            last.depth,
            last.frac
        ),
    ))
}

fn c6_hamiltonian() -> Result<(bool, String)> {
    let conv = QuenchConventions::default();
    let d1 = hamiltonian_cz_deviation(1, &conv)?;
    let d2 = hamiltonian_cz_deviation(2, &conv)?;
    Ok((
        d1 <= 1e-9 && d2 <= 1e-9,
        format!("max deviation m=1 {d1:.1e}, m=2 {d2:.1e}"),
    ))
}

fn c7_marginal() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for m in 1..=3 {
        let draws = quench_conditional_draws(m, QuenchConventions::default(), 20, SEED + 7 + m as u64)?;
        let dev = draws.iter().map(|d| d.marginal_deviation).fold(0.0, f64::max);
        worst = worst.max(dev);
        parts.push(format!("m={m} {dev:.1e}"));
    }
    Ok((worst <= 1e-9, format!("max |q(x_L) - 2^-(n-m)|: {}", parts.join(", "))))
}

fn c8_corollary3() -> Result<(bool, String)> {
    let draws = quench_conditional_draws(2, QuenchConventions::default(), 5000, SEED + 8)?;
    let r = corollary3_report(2, &draws);
    Ok((
        r.passed(),
        format!(
            "Pr(q >= 1/8) {:.4} (se {:.4}) vs {COROLLARY3_BOUND:.4}",
            r.estimate,
            r.se.unwrap_or(0.0)
        ),
    ))
}

fn iqp_all_outputs(m: usize, trials: usize, seed: u64) -> Result<Vec<f64>> {
    let master = Rng::new(seed);
    let per: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            Ok(sample_dense_iqp(m, &mut master.substream(t as u64))?
                .output_state()?
                .distribution())
        })
        .collect::<Result<_>>()?;
    Ok(per.concat())
}

fn c9_ensemble_ks() -> Result<(bool, String)> {
    let draws = quench_conditional_draws(2, QuenchConventions::default(), 5000, SEED + 9)?;
    let quench: Vec<f64> = draws.iter().flat_map(|d| d.conditionals.iter().copied()).collect();
    let iqp = iqp_all_outputs(2, 5000, SEED + 10)?;
    let d = two_sample_ks_statistic(&quench, &iqp);
    let thr = two_sample_threshold(quench.len(), iqp.len());
    Ok((
        d <= thr,
        format!("D {d:.4} vs {thr:.4} ({} vs {} values)", quench.len(), iqp.len()),
    ))
}

fn c10_iqp_anticonc() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [2usize, 3] {
        let master = Rng::new(SEED + 11 + m as u64);
        let p: Vec<f64> = (0..10_000)
            .into_par_iter()
            .map(|t| {
                Ok(sample_dense_iqp(m, &mut master.substream(t))?
                    .output_state()?
                    .probability_at(0))
            })
            .collect::<Result<_>>()?;
        let thr = 1.0 / (1u64 << (m + 1)) as f64;
        let frac = p.iter().filter(|&&v| v >= thr).count() as f64 / p.len() as f64;
        let se = (frac * (1.0 - frac) / p.len() as f64).sqrt();
        ok &= frac >= COROLLARY3_BOUND - 3.0 * se;
        parts.push(format!("m={m} {frac:.4}"));
    }
    Ok((
        ok,
        format!("Pr(p >= 2^-(m+1)): {} vs {COROLLARY3_BOUND:.4}", parts.join(", ")),
    ))
}

fn c11_group_laws() -> Result<(bool, String)> {
    let master = Rng::new(SEED + 12);
    let worst = (0..1000u64)
        .into_par_iter()
        .map(|t| {
            let mut r = master.substream(t);
            let a = sample_dense_iqp(4, &mut r)?;
            let b = sample_dense_iqp(4, &mut r)?;
            let ab = a.compose(&b)?.unitary()?;
            let prod = a.unitary()?.matmul(&b.unitary()?);
            let laws = a.compose(&IqpCircuit::zero(4))? == a && a.compose(&a.inverse())? == IqpCircuit::zero(4);
            Ok(if laws {
                ab.distance_up_to_phase(&prod)
            } else {
                f64::INFINITY
            })
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((
        worst <= 1e-10,
        format!("max unitary deviation {worst:.1e}; identity and inverse exact"),
    ))
}

fn c12_invariants() -> Result<(bool, String)> {
    let mut rng = Rng::new(SEED + 13);
    // norm conservation over a long circuit of random gates
    let n = 5;
    let mut c = Circuit::new(n);
    for _ in 0..10_000 {
        if rng.coin() {
            let q = rng.below(n as u64) as usize;
            c.push(haar_via_qr(2, &mut rng)?.to_gate()?, &[q])?;
        } else {
            let a = rng.below(n as u64) as usize;
            let b = (a + 1 + rng.below(n as u64 - 1) as usize) % n;
            c.push(haar_via_qr(4, &mut rng)?.to_gate()?, &[a, b])?;
        }
    }
    let mut s = State::zero(n)?;
    s.apply_circuit(&c)?;
    let norm_err = (s.norm_sqr() - 1.0).abs();
    // round trip
    let before = s.clone();
    let g = haar_via_qr(4, &mut rng)?.to_gate()?;
    s.apply_gate(&g, &[3, 1])?;
    s.apply_gate(&g.adjoint(), &[3, 1])?;
    let rt = before
        .amplitudes()
        .iter()
        .zip(s.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    // normalization of a few ensembles
    let mut norm_dist: f64 = 0.0;
    let mut check = |st: &State| norm_dist = norm_dist.max((st.distribution().iter().sum::<f64>() - 1.0).abs());
    let mut b = State::zero(6)?;
    b.apply_circuit(&sample_brickwork_circuit(&BrickworkSpec::haar(6, 12), &mut rng)?)?;
    check(&b);
    check(&sample_dense_iqp(5, &mut rng)?.output_state()?);
    let mut h = State::plus(4)?;
    h.apply_gate(&gate::cz(), &[0, 2])?;
    check(&h);
    // Paley-Zygmund on random two-component mixtures
    let mut pz_ok = true;
    for _ in 0..20 {
        let w = rng.uniform();
        let (a, bb) = (rng.uniform(), rng.uniform());
        let v: Vec<f64> = (0..2000)
            .map(|_| if rng.uniform() < w { a * rng.uniform() } else { bb })
            .collect();
        if v.iter().all(|&x| x == 0.0) {
            continue;
        }
        let s = ProbSample::from_values("mix", 1, v)?;
        for k in 1..10 {
            pz_ok &= paley_zygmund_check(&s, k as f64 / 10.0)?.passed();
        }
    }
    let ok = norm_err <= 1e-9 && rt <= 1e-11 && norm_dist <= 1e-10 && pz_ok;
    Ok((
        ok,
        format!("norm drift {norm_err:.1e}, round trip {rt:.1e}, normalization {norm_dist:.1e}, PZ {pz_ok}"),
    ))
}
