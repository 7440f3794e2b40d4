// Deep brickwork circuits anticoncentrate: the Theorem 1 style lower bound
// on Pr(p >= alpha/N) holds once the ensemble is close to a 2-design.

use anticonc::ensembles::{sample_brickwork_circuit, BrickworkSpec, GateSource};
use anticonc::stats::{anticonc_fraction, delta2, empirical_moments, paley_zygmund_check, ProbSample};
use anticonc::{Rng, State};

fn probabilities(spec: &BrickworkSpec, trials: u64, seed: u64) -> anticonc::Result<Vec<f64>> {
    let master = Rng::new(seed);
    (0..trials)
        .map(|t| {
            let c = sample_brickwork_circuit(spec, &mut master.substream(t))?;
            let mut s = State::zero(spec.n)?;
            s.apply_circuit_unchecked(&c)?;
            Ok(s.probability_at(0))
        })
        .collect()
}

pub fn run_example() -> anticonc::Result<()> {
    let n = 6;
    let dim = 1u64 << n;

    let haar = BrickworkSpec::haar(n, 16 * n);
    let p = probabilities(&haar, 400, 11)?;
    let d2 = delta2(empirical_moments(&p)?.second, dim);
    let s = ProbSample::from_values("brickwork", n, p)?;
    println!("Haar bricks, depth {}: delta2 = {d2:.3}", haar.depth);
    println!("  {}", anticonc_fraction(&s, 0.5, 0.1)?);
    println!("  {}", paley_zygmund_check(&s, 0.5)?);

    // Discrete universal gate set: same structure, slower convergence.
    let bis = BrickworkSpec {
        source: GateSource::GateSet("bis".into()),
        ..BrickworkSpec::haar(n, 16 * n)
    };
    let p = probabilities(&bis, 400, 12)?;
    let d2 = delta2(empirical_moments(&p)?.second, dim);
    println!("G_BIS bricks, depth {}: delta2 = {d2:.3}", bis.depth);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
