// Exterior algebra over the rationals: wedge, interior product, pairing,
// and the substitution operator used by the symbol formulas.

use equivar::scalar::{frac, int};
use equivar::tensor::{alt_substitute, directional_derivative, interior, pair, wedge, AltTensor, Polynomial, Vector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    let e1 = AltTensor::basis(m, &[0])?;
    let e2 = AltTensor::basis(m, &[1])?;
    let e12 = wedge(&e1, &e2)?;
    println!("e1 ^ e2 = {}", show(&e12));
    println!("e2 ^ e1 = {}", show(&wedge(&e2, &e1)?));

    // i_X(e¹∧e²) = X₁ e² − X₂ e¹
    let x = Vector::from_ints(&[2, 5, 0]);
    let contracted = interior(&x, &e12)?;
    println!("i_X(e1 ^ e2) = {}", show(&contracted));

    // ⟨X∧Λ, ω⟩ = ⟨Λ, i_X ω⟩
    let lambda = AltTensor::basis(m, &[2])?.scale(&frac(1, 2));
    let omega = wedge(&e1, &AltTensor::basis(m, &[2])?)?.scale(&int(3));
    let lhs = pair(&wedge(&x.to_alt(), &lambda)?, &omega)?;
    let rhs = pair(&lambda, &interior(&x, &omega)?)?;
    assert_eq!(lhs, rhs);
    println!("<X ^ L, w> = <L, i_X w> = {lhs}");

    // X ∧ i_ζ Λ
    let zeta = Vector::from_ints(&[1, 0, 0]);
    let sub = alt_substitute(&x, &zeta, &e12)?;
    println!("X ^ i_zeta(e1 ^ e2) = {}", show(&sub));

    // (ζ·∂_ξ)² (ξ₁ξ₂) = 2 for ζ = (1, 1)
    let p = Polynomial::var(2, 0).mul(&Polynomial::var(2, 1));
    let zeta = Vector::from_ints(&[1, 1]);
    let twice = directional_derivative(&zeta, &directional_derivative(&zeta, &p));
    println!("(zeta . d)^2 (xi1 xi2) = {:?}", twice);
    assert_eq!(twice, Polynomial::constant(2, int(2)));
    Ok(())
}

fn show(t: &AltTensor) -> String {
    let parts: Vec<String> = t.terms().map(|(b, c)| format!("{c} {b:?}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
