use std::f64::consts::PI;

use anticonc::ensembles::{sample_brickwork_circuit, sample_dense_iqp, BrickworkSpec};
use anticonc::random_matrix::{
    haar_via_gue, haar_via_qr, porter_thomas_cdf, porter_thomas_pdf, porter_thomas_quantile, sample_gue,
};
use anticonc::stats::{ks_porter_thomas, theorem1_bound, two_sample_ks_statistic, two_sample_threshold, ProbSample};
use anticonc::{Rng, State};

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for k in 1..intervals {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

// sup |F_n - F| against a continuous cdf, written out with both one-sided gaps
fn ks_one_sample(mut v: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

#[test]
fn porter_thomas_density_integrates_to_one() {
    for dim in [2u64, 8, 64] {
        let total = simpson(|p| porter_thomas_pdf(p, dim).unwrap(), 0.0, 1.0, 20_000);
        assert!((total - 1.0).abs() < 1e-9, "N={dim}: {total}");
    }
}

#[test]
fn porter_thomas_mean_by_quadrature() {
    let dim = 16;
    let mean = simpson(|p| p * porter_thomas_pdf(p, dim).unwrap(), 0.0, 1.0, 20_000);
    assert!((mean - 1.0 / 16.0).abs() < 1e-10);
    let second = simpson(|p| p * p * porter_thomas_pdf(p, dim).unwrap(), 0.0, 1.0, 20_000);
    assert!((second - 2.0 / (16.0 * 17.0)).abs() < 1e-10);
}

#[test]
fn cdf_is_integral_of_pdf_and_quantile_inverts_it() {
    for dim in [2u64, 8, 1024] {
        for &p in &[0.0, 1e-4, 0.01, 0.1, 0.5, 0.9] {
            let integral = simpson(|t| porter_thomas_pdf(t, dim).unwrap(), 0.0, p, 200_000);
            let cdf = porter_thomas_cdf(p, dim).unwrap();
            assert!((integral - cdf).abs() < 1e-8, "N={dim} p={p}");
            let back = porter_thomas_quantile(cdf, dim).unwrap();
            if cdf < 1.0 - 1e-12 {
                assert!((back - p).abs() < 1e-9, "N={dim} p={p} back={back}");
            }
        }
    }
}

#[test]
fn one_dimensional_haar_is_a_uniform_phase() {
    let master = Rng::new(101);
    let phases: Vec<f64> = (0..5000)
        .map(|t| {
            let u = haar_via_qr(1, &mut master.substream(t)).unwrap()[(0, 0)];
            assert!((u.norm() - 1.0).abs() < 1e-12);
            u.arg()
        })
        .collect();
    let d = ks_one_sample(phases, |x| (x + PI) / (2.0 * PI));
    assert!(d < 1.628 / 5000f64.sqrt(), "D = {d}");
}

#[test]
fn gue_entry_moments() {
    let master = Rng::new(102);
    let (mut diag, mut diag_sq, mut off_sq) = (Vec::new(), Vec::new(), Vec::new());
    for t in 0..20_000 {
        let h = sample_gue(3, &mut master.substream(t));
        assert!(h.hermiticity_error() == 0.0);
        diag.push(h[(0, 0)].re);
        diag_sq.push(h[(1, 1)].re.powi(2));
        off_sq.push(h[(0, 1)].norm_sqr());
    }
    for (name, v, target) in [("H00", &diag, 0.0), ("H11^2", &diag_sq, 1.0), ("|H01|^2", &off_sq, 1.0)] {
        let (m, se) = mean_se(v);
        assert!((m - target).abs() <= 4.0 * se, "{name}: {m} +- {se}");
    }
}

#[test]
fn haar_is_left_invariant() {
    let v = haar_via_qr(4, &mut Rng::new(103)).unwrap();
    let master = Rng::new(104);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for t in 0..5000 {
        let u = haar_via_qr(4, &mut master.substream(t)).unwrap();
        a.push(u[(0, 0)].norm_sqr());
        b.push(v.matmul(&u)[(2, 1)].norm_sqr());
    }
    let d = two_sample_ks_statistic(&a, &b);
    assert!(d <= two_sample_threshold(a.len(), b.len()), "D = {d}");
}

#[test]
fn gue_route_gives_haar_moments() {
    let master = Rng::new(105);
    let p: Vec<f64> = (0..20_000)
        .map(|t| haar_via_gue(8, &mut master.substream(t)).unwrap()[(3, 5)].norm_sqr())
        .collect();
    let (m, se) = mean_se(&p);
    assert!((m - 0.125).abs() <= 3.0 * se);
    let sq: Vec<f64> = p.iter().map(|x| x * x).collect();
    let (m2, se2) = mean_se(&sq);
    assert!((m2 - 2.0 / 72.0).abs() <= 3.0 * se2);
}

#[test]
fn dense_iqp_angles_are_uniform() {
    let master = Rng::new(106);
    let mut counts = [0usize; 8];
    for t in 0..8000 {
        let c = sample_dense_iqp(3, &mut master.substream(t)).unwrap();
        for &k in c.single_angles().iter().chain(c.pair_angles()) {
            counts[k as usize] += 1;
        }
    }
    let e = counts.iter().sum::<usize>() as f64 / 8.0;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    // 7 dof, 0.1% tail
    assert!(chi2 < 24.322, "chi2 {chi2} {counts:?}");
}

#[test]
fn dense_iqp_is_a_one_design_on_average() {
    for m in [2usize, 3] {
        let master = Rng::new(107 + m as u64);
        let x = (1usize << m) - 1;
        let p: Vec<f64> = (0..10_000)
            .map(|t| {
                sample_dense_iqp(m, &mut master.substream(t))
                    .unwrap()
                    .output_state()
                    .unwrap()
                    .probability_at(x)
            })
            .collect();
        let (mean, se) = mean_se(&p);
        let target = 1.0 / (1u64 << m) as f64;
        assert!((mean - target).abs() <= 3.0 * se, "m={m}: {mean} +- {se}");
    }
}

#[test]
fn converged_brickwork_meets_theorem1_bound() {
    for n in [4usize, 6] {
        let spec = BrickworkSpec::haar(n, 16 * n);
        let master = Rng::new(200 + n as u64);
        let p: Vec<f64> = (0..2000)
            .map(|t| {
                let c = sample_brickwork_circuit(&spec, &mut master.substream(t)).unwrap();
                let mut s = State::zero(n).unwrap();
                s.apply_circuit_unchecked(&c).unwrap();
                s.probability_at(0)
            })
            .collect();
        let dim = (1u64 << n) as f64;
        for alpha in [0.25, 0.5, 0.75] {
            let frac = p.iter().filter(|&&v| v >= alpha / dim).count() as f64 / p.len() as f64;
            let se = (frac * (1.0 - frac) / p.len() as f64).sqrt();
            let bound = theorem1_bound(alpha, 0.1).unwrap();
            assert!(frac >= bound - 3.0 * se, "n={n} alpha={alpha}: {frac} vs {bound}");
        }
    }
}

#[test]
fn ks_rejects_calibrated_null_rarely() {
    let dim = 16;
    let reps = 200u64;
    let rejected = (0..reps)
        .filter(|&k| {
            let mut r = Rng::new(300).substream(k);
            let v: Vec<f64> = (0..2000)
                .map(|_| porter_thomas_quantile(r.uniform(), dim).unwrap())
                .collect();
            !ks_porter_thomas(&ProbSample::from_values("null", 4, v).unwrap())
                .unwrap()
                .passed()
        })
        .count();
    assert!(rejected as f64 / reps as f64 <= 0.03, "{rejected}/{reps}");
}

#[test]
fn ks_detects_a_wrong_dimension() {
    let mut r = Rng::new(301);
    let v: Vec<f64> = (0..5000)
        .map(|_| porter_thomas_quantile(r.uniform(), 32).unwrap())
        .collect();
    assert!(!ks_porter_thomas(&ProbSample::from_values("wrong", 4, v).unwrap())
        .unwrap()
        .passed());
}
