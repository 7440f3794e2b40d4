// The quench architecture: random product input on an m x (2m+1) lattice,
// one Ising quench, X readout. The left block marginal is exactly uniform
// and the right column conditionals look like dense IQP outputs.

use anticonc::quench::{
    conditionals_xr, cz_phases, export_lattice, family_size, hamiltonian_phases, marginal_xl, phase_deviation,
    q_ac_distribution, QuenchConventions, QuenchInstance,
};
use anticonc::Rng;

pub fn run_example() -> anticonc::Result<()> {
    let m = 2;
    let conv = QuenchConventions::default();
    let export = export_lattice(m, &conv)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&export).map_err(anticonc::Error::from)?
    );

    let inst = QuenchInstance::sample(m, conv, &mut Rng::new(4))?;
    let n = inst.lattice.n();
    println!("n = {n}, |family| = {}", family_size(&inst.roles));

    let h = hamiltonian_phases(n, &inst.sublattice)?;
    let cz = cz_phases(n, &inst.sublattice)?;
    println!(
        "H_ac vs CZ phases, up to global phase: {:.1e}",
        phase_deviation(&h, &cz)
    );

    let dist = q_ac_distribution(&inst)?;
    let uniform = 1.0 / (1u64 << (n - m)) as f64;
    let dev = marginal_xl(&inst.lattice, &dist)?
        .iter()
        .map(|q| (q - uniform).abs())
        .fold(0.0, f64::max);
    println!("max |q(x_L) - 2^-(n-m)| = {dev:.1e}");

    let cond = conditionals_xr(&inst.lattice, &dist)?;
    println!("q(x_R | x_L = 0) = {:?}", cond[0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
