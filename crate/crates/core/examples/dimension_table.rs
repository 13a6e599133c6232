// Dimensions of the spaces of equivariant operators over a small grid of
// cells, next to the closed-form reference values. Borderline cells sit in
// too low a dimension for the reference formula to apply.

use equivar::classifier::{classify_direct, expected_dimension, natural_order, Cell, DirectOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    println!("| p | q | k | l | dim | expected | borderline |");
    println!("|---|---|---|---|-----|----------|------------|");
    for p in 0..=2usize {
        for offset in [-2i64, -1, 0, 1] {
            let q = p as i64 + offset;
            if q < 0 || q as usize > m {
                continue;
            }
            let q = q as usize;
            for k in 0..=2 {
                let Some(l) = natural_order(p, q, k) else { continue };
                let cell = Cell::new(m, p, q, k, l)?;
                let result = classify_direct(cell, &DirectOptions::default())?;
                let expected = expected_dimension(&cell).map_or("-".to_string(), |d| d.to_string());
                println!("| {p} | {q} | {k} | {l} | {} | {expected} | {} |", result.dimension, result.borderline);
                if !result.borderline {
                    assert_eq!(Some(result.dimension), expected_dimension(&cell));
                }
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
