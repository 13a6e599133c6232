// The Lie derivative of a differential operator symbol, computed both as a
// commutator on test forms and from the closed symbol formula.

use equivar::scalar::{int, one};
use equivar::symbol::{apply, lie_form, lie_function, lie_op, lie_symbolic, FormField, OpSymbol, PolyVectorField};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = 2;
    // D = x¹ ξ₂ ⟨e₁, ·⟩, i.e. D(ω) = x¹ ∂₂ ω₁
    let d = OpSymbol::monomial(m, 1, &[1, 0], &[0, 1], &[0], one())?;
    // X = (x¹)² ∂₂ + x² ∂₁
    let x = PolyVectorField::monomial(m, &[2, 0], 1, one())?.add(&PolyVectorField::monomial(m, &[0, 1], 0, one())?);

    let operational = lie_op(&x, &d)?;
    let symbolic = lie_symbolic(&x, &d)?;
    println!("D        = {}", d.to_json());
    println!("L_X D    = {}", operational.to_json());
    assert_eq!(operational, symbolic);
    println!("commutator and symbol formula agree");

    // (L_X D)(ω) = X(Dω) − D(L_X ω)
    let mut omega = FormField::monomial(m, &[1, 2], &[0], int(3))?;
    omega = omega.add(&FormField::monomial(m, &[0, 1], &[1], int(-1))?)?;
    let lhs = apply(&operational, &omega)?;
    let rhs = lie_function(&x, &apply(&d, &omega)?).sub(&apply(&d, &lie_form(&x, &omega)?)?);
    assert_eq!(lhs, rhs);
    println!("(L_X D)(w) = {lhs:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
