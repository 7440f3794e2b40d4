// Random diagonal circuits: H on every qubit, random Z-type phases, H again.

use anticonc::ensembles::{sample_diagonal_circuit, DiagonalSpec};
use anticonc::stats::{anticonc_fraction, delta2, empirical_moments, ProbSample};
use anticonc::{Rng, State};

pub fn run_example() -> anticonc::Result<()> {
    let n = 5;
    let spec = DiagonalSpec::complete(n);
    let master = Rng::new(9);
    let mut p = Vec::new();
    for t in 0..3000 {
        let c = sample_diagonal_circuit(&spec, &mut master.substream(t))?;
        let mut s = State::plus(n)?;
        s.apply_circuit_unchecked(&c)?;
        s.hadamard_all();
        p.push(s.probability_at(0));
    }
    let d2 = delta2(empirical_moments(&p)?.second, 1 << n);
    println!("complete diagonal ensemble, n = {n}: delta2 = {d2:.3}");
    println!(
        "{}",
        anticonc_fraction(&ProbSample::from_values("diagonal", n, p)?, 0.5, 0.1)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
