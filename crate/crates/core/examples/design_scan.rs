// Convergence of brickwork circuits towards a 2-design as depth grows.

use anticonc::experiment::{cmd_scan, ScanOptions};

pub fn run_example() -> anticonc::Result<()> {
    let out = cmd_scan(&ScanOptions::standard(4, 1500, 3))?;
    print!("{}", out.csv());
    println!("delta2 strictly decreasing: {}", out.delta2_strictly_decreasing);
    match out.first_converged_depth {
        Some(d) => println!("first depth with |delta2| <= 0.1: {d}"),
        None => println!("no scanned depth reached |delta2| <= 0.1"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anticonc::Result<()> {
    run_example()
}
