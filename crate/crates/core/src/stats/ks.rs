use crate::error::{Error, Result};
use crate::random_matrix::porter_thomas_cdf;

use super::report::{Report, Verdict};
use super::sample::ProbSample;

/// Asymptotic Kolmogorov critical value at alpha = 0.01.
pub const KS_C_001: f64 = 1.628;

/// One-sample KS statistic `sup |F_n - F|` for a continuous null CDF.
pub fn ks_statistic(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// KS against the Porter-Thomas CDF `1 - (1-p)^(N-1)`; passes iff
/// `D <= 1.628 / sqrt(n)`.
pub fn ks_porter_thomas(s: &ProbSample) -> Result<Report> {
    if s.dim < 2 {
        return Err(Error::Input("Porter-Thomas law needs N >= 2".into()));
    }
    let dim = s.dim;
    let d = ks_statistic(s.values(), |p| porter_thomas_cdf(p, dim).expect("clamped probability"));
    let thr = KS_C_001 / (s.len() as f64).sqrt();
    Ok(Report::new("ks_porter_thomas", d, Verdict::from_bool(d <= thr))
        .with_reference(thr)
        .param("n", s.len() as f64)
        .param("dim", dim as f64))
}

/// Values closer than this are one atom. Probabilities of discrete laws
/// computed along different routes differ by a few ulps, and without merging
/// each such pair would count as a full-size CDF gap.
pub const KS_TIE_TOL: f64 = 1e-12;

/// Two-sample KS statistic. Ties (common for discrete laws) are stepped over
/// together so both empirical CDFs are compared only at right limits.
pub fn two_sample_ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]) + KS_TIE_TOL;
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Critical value `1.628 sqrt((n+m)/(nm))`.
pub fn two_sample_threshold(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    KS_C_001 * ((n + m) / (n * m)).sqrt()
}

/// Passes when the two samples are not distinguishable at alpha = 0.01.
pub fn two_sample_ks(a: &ProbSample, b: &ProbSample) -> Report {
    let d = two_sample_ks_statistic(a.values(), b.values());
    let thr = two_sample_threshold(a.len(), b.len());
    Report::new("two_sample_ks", d, Verdict::from_bool(d <= thr))
        .with_reference(thr)
        .param("n_a", a.len() as f64)
        .param("n_b", b.len() as f64)
}
