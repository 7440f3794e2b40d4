use crate::error::{Error, Result};

use super::moments::empirical_moments;
use super::report::{Report, Verdict};
use super::sample::ProbSample;

/// Two-sided 99% normal quantile.
pub const WILSON_Z_99: f64 = 2.575_829_303_548_900_4;

/// Theorem 1 lower bound `(1-alpha)^2 (1-eps)^2 / (2(1+eps))`.
pub fn theorem1_bound(alpha: f64, epsilon: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Input(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Input(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    Ok((1.0 - alpha).powi(2) * (1.0 - epsilon).powi(2) / (2.0 * (1.0 + epsilon)))
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Fraction of values `>= threshold`.
pub fn fraction_at_least(values: &[f64], threshold: f64) -> f64 {
    values.iter().filter(|&&p| p >= threshold).count() as f64 / values.len() as f64
}

fn fraction_report(name: &str, values: &[f64], hits: usize, bound: f64) -> Report {
    let n = values.len();
    let frac = hits as f64 / n as f64;
    let (lo, hi) = wilson_interval(hits, n, WILSON_Z_99);
    let se = (frac * (1.0 - frac) / n as f64).sqrt();
    Report::new(name, frac, Verdict::from_bool(lo >= bound))
        .with_se(se)
        .with_ci(lo, hi)
        .with_reference(bound)
}

/// Fraction of `p > alpha (1-eps) / N`; passes iff the Wilson 99% lower bound
/// reaches [`theorem1_bound`].
pub fn anticonc_fraction(s: &ProbSample, alpha: f64, epsilon: f64) -> Result<Report> {
    let bound = theorem1_bound(alpha, epsilon)?;
    let thr = alpha * (1.0 - epsilon) / s.dim as f64;
    let hits = s.values().iter().filter(|&&p| p > thr).count();
    Ok(fraction_report("anticonc_fraction", s.values(), hits, bound)
        .param("alpha", alpha)
        .param("epsilon", epsilon)
        .param("threshold", thr))
}

/// Fraction of `p >= threshold` against an arbitrary bound, Wilson 99%.
pub fn threshold_fraction(s: &ProbSample, threshold: f64, bound: f64) -> Report {
    let hits = s.values().iter().filter(|&&p| p >= threshold).count();
    fraction_report("threshold_fraction", s.values(), hits, bound).param("threshold", threshold)
}

/// Paley-Zygmund: passes iff `Pr(p > alpha mean) + 3 SE >= (1-alpha)^2 mean^2 / E[p^2]`.
pub fn paley_zygmund_check(s: &ProbSample, alpha: f64) -> Result<Report> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Input(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let values = s.values();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let second = values.iter().map(|p| p * p).sum::<f64>() / n;
    if second <= 0.0 {
        return Err(Error::Numerical("second moment is zero".into()));
    }
    let lhs = values.iter().filter(|&&p| p > alpha * mean).count() as f64 / n;
    let se = (lhs * (1.0 - lhs) / n).sqrt();
    let rhs = (1.0 - alpha).powi(2) * mean * mean / second;
    Ok(
        Report::new("paley_zygmund", lhs, Verdict::from_bool(lhs + 3.0 * se >= rhs))
            .with_se(se)
            .with_reference(rhs)
            .param("alpha", alpha),
    )
}

/// Moments report against Haar values `1/N`, `2/(N(N+1))`.
pub fn moments_reports(s: &ProbSample) -> Result<Vec<Report>> {
    let m = empirical_moments(s.values())?;
    let (first, second) = crate::random_matrix::haar_moments(s.dim)?;
    Ok(vec![
        Report::new(
            "mean",
            m.mean,
            Verdict::from_bool((m.mean - first).abs() <= 3.0 * m.se_mean),
        )
        .with_se(m.se_mean)
        .with_reference(first),
        Report::new(
            "second_moment",
            m.second,
            Verdict::from_bool((m.second - second).abs() <= 3.0 * m.se_second),
        )
        .with_se(m.se_second)
        .with_reference(second),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_matrix::{porter_thomas_cdf, porter_thomas_quantile};
    use crate::rng::Rng;

    #[test]
    fn bound_values() {
        assert_eq!(theorem1_bound(0.0, 0.0).unwrap(), 0.5);
        assert_eq!(theorem1_bound(1.0, 0.3).unwrap(), 0.0);
        assert_eq!(theorem1_bound(0.5, 0.0).unwrap(), 0.125);
        assert!((theorem1_bound(0.5, 0.1).unwrap() - 0.0920454545).abs() < 1e-9);
        assert!(theorem1_bound(1.1, 0.0).is_err());
        assert!(theorem1_bound(0.5, 1.0).is_err());
    }

    #[test]
    fn wilson_against_closed_form() {
        // k = 0: upper bound z^2 / (n + z^2)
        let (lo, hi) = wilson_interval(0, 100, WILSON_Z_99);
        let z2 = WILSON_Z_99 * WILSON_Z_99;
        assert_eq!(lo, 0.0);
        assert!((hi - z2 / (100.0 + z2)).abs() < 1e-12);
        let (lo, hi) = wilson_interval(50, 100, WILSON_Z_99);
        assert!((0.5 - lo - (hi - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn uniform_values_all_pass() {
        let s = ProbSample::from_values("t", 3, vec![0.125; 100]).unwrap();
        let r = anticonc_fraction(&s, 0.5, 0.0).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert!(r.passed());
    }

    #[test]
    fn zero_values_fail() {
        let s = ProbSample::from_values("t", 3, vec![0.0; 100]).unwrap();
        let r = anticonc_fraction(&s, 0.5, 0.0).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert!(!r.passed());
    }

    #[test]
    fn porter_thomas_fraction() {
        let dim = 1u64 << 10;
        let mut rng = Rng::new(21);
        let values: Vec<f64> = (0..20_000)
            .map(|_| porter_thomas_quantile(rng.uniform(), dim).unwrap())
            .collect();
        let s = ProbSample::from_values("pt", 10, values).unwrap();
        let r = anticonc_fraction(&s, 0.5, 0.0).unwrap();
        let expect = 1.0 - porter_thomas_cdf(0.5 / dim as f64, dim).unwrap();
        assert!((expect - (-0.5f64).exp()).abs() < 1e-3);
        assert!((r.estimate - expect).abs() <= 3.0 * r.se.unwrap());
        assert!(r.passed());
    }

    #[test]
    fn paley_zygmund_hand_cases() {
        let s = ProbSample::from_values("t", 1, vec![0.3; 10]).unwrap();
        assert!(paley_zygmund_check(&s, 0.4).unwrap().passed());
        let s = ProbSample::from_values("t", 1, vec![0.0, 1.0]).unwrap();
        let r = paley_zygmund_check(&s, 0.5).unwrap();
        assert_eq!(r.estimate, 0.5);
        assert!((r.reference.unwrap() - 0.125).abs() < 1e-15);
        assert!(r.passed());
        let s = ProbSample::from_values("t", 1, vec![0.0, 0.0]).unwrap();
        assert!(paley_zygmund_check(&s, 0.5).is_err());
    }
}
