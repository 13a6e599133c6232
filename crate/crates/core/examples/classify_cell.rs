// Classifies the equivariant operators of one cell on the direct path and
// checks that `d*` lies in the computed space.

use equivar::canonical::CanonicalOp;
use equivar::classifier::{classify_direct, equivariance_residual, in_span, CandidateOperator, Cell, DirectOptions};
use equivar::random::RandomSource;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // T : 𝒟¹₁ → 𝒟²₀ on ℝ³
    let cell = Cell::new(3, 1, 0, 1, 2)?;
    let result = classify_direct(cell, &DirectOptions::default())?;
    println!("{}", result.to_json());
    println!("dimension {} (stabilized: {})", result.dimension, result.stabilized);

    let r_bound = result.bounds.r_bound;
    let dstar = CandidateOperator::encode(cell, r_bound, |d| CanonicalOp::DStar.apply(d))?;
    assert!(in_span(&result.basis, &dstar));
    println!("d* lies in the span of the basis");

    // every basis vector commutes with L_X on random inputs
    let mut rng = RandomSource::new(7);
    for t in &result.basis {
        for _ in 0..5 {
            let x = rng.vector_field(cell.m, 2, 3);
            let d = rng.op_symbol(cell.m, cell.k, cell.p, 2, 4);
            assert!(equivariance_residual(t, &x, &d)?.is_zero());
        }
    }
    println!("basis vectors pass the residual check on random fields");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
