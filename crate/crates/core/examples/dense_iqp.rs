// Dense IQP circuits form a finite abelian group; composition is addition of
// angle indices mod 8. Their output probabilities anticoncentrate.

use anticonc::ensembles::{sample_dense_iqp, IqpCircuit};
use anticonc::Rng;

pub fn run_example() -> anticonc::Result<()> {
    let m = 3;
    let mut rng = Rng::new(5);
    let a = sample_dense_iqp(m, &mut rng)?;
    let b = sample_dense_iqp(m, &mut rng)?;

    let lhs = a.compose(&b)?.unitary()?;
    let rhs = a.unitary()?.matmul(&b.unitary()?);
    println!(
        "||U(a+b) - U(a)U(b)|| up to phase = {:.2e}",
        lhs.distance_up_to_phase(&rhs)
    );
    println!("a + 0 == a: {}", a.compose(&IqpCircuit::zero(m))? == a);
    println!("a + (-a) == 0: {}", a.compose(&a.inverse())? == IqpCircuit::zero(m));
    println!("a + b == b + a: {}", a.compose(&b)? == b.compose(&a)?);

    let master = Rng::new(6);
    let thr = 1.0 / (1u64 << (m + 1)) as f64;
    let trials = 5000;
    let mut hits = 0;
    for t in 0..trials {
        let c = sample_dense_iqp(m, &mut master.substream(t))?;
        if c.output_state()?.probability_at(0) >= thr {
            hits += 1;
        }
    }
    println!(
        "Pr(p(0) >= 2^-(m+1)) = {:.4} over {trials} circuits",
        hits as f64 / trials as f64
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
