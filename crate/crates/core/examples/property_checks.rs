// Randomized consistency checks: the two Lie derivative routes, the Jacobi
// identity for the action, and equivariance of every canonical operator.

use equivar::canonical::CanonicalOp;
use equivar::properties::{all, canonical_equivariance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let seed = 2024;
    for report in all(seed, 10) {
        println!("{:<40} {:>4} instances, {} failures", report.name, report.instances, report.failures.len());
        assert!(report.passed());
    }
    let k = canonical_equivariance(CanonicalOp::K1p, seed + 1, 20, 3);
    println!("K on first-order operators: {} / {} equivariant", k.instances - k.failures.len(), k.instances);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
