// The canonical equivariant operators applied to concrete symbols, and the
// decompositions behind `K`.

use equivar::canonical::{
    decompose_d1p, decompose_d20, dstar_k, dstar_k_closed_form, k_d1p, reconstruct_d1p, CanonicalOp,
};
use equivar::scalar::{frac, int, one};
use equivar::symbol::{dual_d, OpSymbol};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    // D(ω) = ∂₁ω₂ + 2 x³ ∂₃ω₁ + ω₃ on 1-forms
    let d = OpSymbol::monomial(m, 1, &[0, 0, 0], &[1, 0, 0], &[1], one())?
        .add(&OpSymbol::monomial(m, 1, &[0, 0, 1], &[0, 0, 1], &[0], int(2))?)?
        .add(&OpSymbol::monomial(m, 1, &[0, 0, 0], &[0, 0, 0], &[2], one())?)?;

    let dec = decompose_d1p(&d)?;
    println!("D = sum of {} terms X(Lambda .) plus a zeroth-order part", dec.pairs.len());
    assert_eq!(reconstruct_d1p(&dec)?, d);

    let k = k_d1p(&d)?;
    println!("K(D)   = {}", k.to_json());
    println!("d*(D)  = {}", dual_d(&d)?.to_json());
    let dk = dstar_k(&d)?;
    assert_eq!(dk, dstar_k_closed_form(&dec)?);
    println!("d*K(D) = {}", dk.to_json());

    // K(∂₁ ⟨e₂,·⟩) = ½ ⟨e₁∧e₂, ·⟩
    let simple = OpSymbol::monomial(m, 1, &[0, 0, 0], &[1, 0, 0], &[1], one())?;
    assert_eq!(k_d1p(&simple)?, OpSymbol::monomial(m, 0, &[0, 0, 0], &[0, 0, 0], &[0, 1], frac(1, 2))?);

    // second-order operators on functions
    let f = OpSymbol::monomial(m, 2, &[1, 0, 0], &[0, 1, 1], &[], int(4))?;
    let dec20 = decompose_d20(&f)?;
    println!("D^2_0 decomposition: {} triples, {} pairs", dec20.triples.len(), dec20.pairs.len());

    for op in CanonicalOp::ALL {
        let input = match op {
            CanonicalOp::I0 | CanonicalOp::K20 => &f,
            _ => &d,
        };
        match op.apply(input) {
            Ok(out) => {
                println!("{:>6}: order {} symbol on {}-forms, {} terms", op.name(), out.order(), out.grade(), out.len())
            }
            Err(e) => println!("{:>6}: {e}", op.name()),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
