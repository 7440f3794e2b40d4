// Two constructions of Haar unitaries should give the same overlap law.

use anticonc::random_matrix::{haar_via_gue, haar_via_qr};
use anticonc::stats::{two_sample_ks_statistic, two_sample_threshold};
use anticonc::Rng;

pub fn run_example() -> anticonc::Result<()> {
    let dim = 4;
    let trials = 4000;
    let (qr_rng, gue_rng) = (Rng::new(1), Rng::new(2));
    let mut a = Vec::with_capacity(trials);
    let mut b = Vec::with_capacity(trials);
    let mut worst_unitarity: f64 = 0.0;
    for t in 0..trials as u64 {
        let u = haar_via_qr(dim, &mut qr_rng.substream(t))?;
        let v = haar_via_gue(dim, &mut gue_rng.substream(t))?;
        worst_unitarity = worst_unitarity.max(u.unitarity_error()).max(v.unitarity_error());
        a.push(u[(0, 0)].norm_sqr());
        b.push(v[(0, 0)].norm_sqr());
    }
    let d = two_sample_ks_statistic(&a, &b);
    let thr = two_sample_threshold(a.len(), b.len());
    println!("max ||U^dag U - I|| = {worst_unitarity:.2e}");
    println!("two-sample KS D = {d:.4}, critical value at 1% = {thr:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
