// Output probabilities of Haar-random unitaries against the Porter-Thomas law.

use anticonc::random_matrix::{haar_moments, haar_via_qr, porter_thomas_cdf};
use anticonc::stats::{empirical_moments, ks_porter_thomas, ProbSample};
use anticonc::Rng;

pub fn run_example() -> anticonc::Result<()> {
    let n = 3;
    let dim = 1usize << n;
    let master = Rng::new(7);
    let mut p = Vec::with_capacity(20_000);
    for t in 0..20_000 {
        let u = haar_via_qr(dim, &mut master.substream(t))?;
        p.push(u[(0, 0)].norm_sqr());
    }

    let m = empirical_moments(&p)?;
    let (mean, second) = haar_moments(dim as u64)?;
    println!("E[p]   = {:.5} +- {:.5}  (exact {mean:.5})", m.mean, m.se_mean);
    println!("E[p^2] = {:.5} +- {:.5}  (exact {second:.5})", m.second, m.se_second);

    let ks = ks_porter_thomas(&ProbSample::from_values("haar", n, p)?)?;
    println!("{ks}");
    println!("P(p <= 1/N) = {:.4}", porter_thomas_cdf(1.0 / dim as f64, dim as u64)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
