//! The `Vect(ℝᵐ)`-action on forms and on operator symbols.
//!
//! `lie_op` works operationally (commutator on test forms, symbol read back);
//! `lie_symbolic` evaluates the three-term symbol formula directly. The two
//! are independent and are tested against each other.

use super::derham::{de_rham, interior_field};
use super::field::{AltField, FormField, PolyFunction, PolyVectorField};
use super::op::{apply, OpSymbol, SymbolKey, TensorFieldSymbol};
use crate::error::{Error, Result};
use crate::scalar::{from_bigint, int, Rational};
use crate::tensor::{Blade, MultiIndex};

/// `L_X ω = i_X dω + d i_X ω`.
pub fn lie_form(x: &PolyVectorField, omega: &FormField) -> Result<FormField> {
    if x.dim() != omega.dim() {
        return Err(Error::DimensionMismatch { expected: omega.dim(), found: x.dim() });
    }
    let first = interior_field(x, &de_rham(omega))?;
    if omega.grade() == 0 {
        return Ok(first);
    }
    first.add(&de_rham(&interior_field(x, omega)?))
}

/// Reads back the symbol of a linear operator of order `≤ max_order` from its
/// values on the test fields `x^ν ε_I`, `|ν| ≤ max_order`.
///
/// Uses `O(x^ν ε_I) = Σ_{α≤ν} O_{α,I}(x) ν!/(ν−α)! x^{ν−α}`, solved by
/// induction on `|ν|`.
pub fn extract_symbol<F>(dim: usize, grade: usize, max_order: usize, mut op: F) -> Result<OpSymbol>
where
    F: FnMut(&FormField) -> Result<PolyFunction>,
{
    let mut out = OpSymbol::new(dim, max_order, grade)?;
    for blade in Blade::all_of_grade(dim, grade) {
        let mut found: Vec<(MultiIndex, PolyFunction)> = Vec::new();
        for nu in MultiIndex::up_to_degree(dim, max_order) {
            let mut test = AltField::zero(dim, grade);
            test.add_term(nu, blade, crate::scalar::one());
            let mut value = op(&test)?;
            for (alpha, coeff) in &found {
                if !alpha.divides(&nu) {
                    continue;
                }
                let rest = nu.checked_sub(alpha).expect("alpha divides nu");
                let factor = from_bigint(nu.falling(alpha));
                let shifted = coeff.mul(&PolyFunction::monomial(rest, factor));
                value = value.sub(&shifted);
            }
            let norm = Rational::from_integer(nu.factorial()).recip();
            let coeff = value.scale(&norm);
            for (mu, c) in coeff.terms() {
                out.add_term(SymbolKey::new(*mu, nu, blade), c.clone());
            }
            found.push((nu, coeff));
        }
    }
    Ok(out)
}

/// `L_X D = L_X ∘ D − D ∘ L_X`, computed on test forms.
pub fn lie_op(x: &PolyVectorField, d: &OpSymbol) -> Result<OpSymbol> {
    if x.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: x.dim() });
    }
    // the commutator could a priori have order k+1; read that far and check
    let raw = extract_symbol(d.dim(), d.grade(), d.order() + 1, |omega| {
        let outer = x.apply(&apply(d, omega)?);
        let inner = apply(d, &lie_form(x, omega)?)?;
        Ok(outer.sub(&inner))
    })?;
    raw.with_order(d.order())
}

/// Which parts of the three-term formula to keep.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Full,
    /// Only the terms that preserve `ξ`-degree (the tensorial Lie derivative).
    Principal,
}

/// `L_X D ≃ ⟨X,η⟩D − ⟨X,ξ⟩τ_ζD − D(ξ+ζ; ζ∧i_X ω)`, with `η` acting on the
/// coefficients of `D` and `ζ` on those of `X`.
pub fn lie_symbolic(x: &PolyVectorField, d: &OpSymbol) -> Result<OpSymbol> {
    lie_three_term(x, d, Part::Full)
}

fn lie_three_term(x: &PolyVectorField, d: &OpSymbol, part: Part) -> Result<OpSymbol> {
    if x.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: x.dim() });
    }
    let dim = d.dim();
    let mut out = OpSymbol::zero_unchecked(dim, d.order(), d.grade());
    for (key, c) in d.terms() {
        for ((nu, j), a) in x.terms() {
            let ca = c * a;
            let j = *j;
            // ⟨X,η⟩ D
            if key.x.get(j) > 0 {
                let xm = key.x.add(nu).decrement(j).expect("positive exponent");
                out.add_term(SymbolKey::new(xm, key.xi, key.blade), &ca * int(key.x.get(j) as i64));
            }
            // −⟨X,ξ⟩ τ_ζ D: β ≠ 0 derivatives move from ξ onto X
            for beta in key.xi.divisors() {
                if beta.is_zero() || !beta.divides(nu) {
                    continue;
                }
                if part == Part::Principal && beta.degree() != 1 {
                    continue;
                }
                let xm = key.x.add(&nu.checked_sub(&beta).expect("beta divides nu"));
                let xi = key.xi.checked_sub(&beta).expect("beta divides xi").increment(j);
                let k = from_bigint(key.xi.binomial(&beta) * nu.falling(&beta));
                out.add_term(SymbolKey::new(xm, xi, key.blade), -(&ca * k));
            }
            // −D(ξ+ζ; ζ∧i_X ·) = −⟨e_j ∧ i_{εⁱ} e_I⟩ with ∂ᵢ ∂^β hitting X
            if key.blade.grade() == 0 {
                continue;
            }
            for i in key.blade.indices() {
                let (s1, rest) = key.blade.contract(i).expect("index in blade");
                let Some((s2, blade)) = Blade::single(j).wedge(rest) else { continue };
                let Some(nu_i) = nu.decrement(i) else { continue };
                for beta in key.xi.divisors() {
                    if part == Part::Principal && !beta.is_zero() {
                        continue;
                    }
                    if !beta.divides(&nu_i) {
                        continue;
                    }
                    let xm = key.x.add(&nu_i.checked_sub(&beta).expect("beta divides"));
                    let xi = key.xi.checked_sub(&beta).expect("beta divides xi");
                    let k = from_bigint(key.xi.binomial(&beta) * nu.falling(&beta.increment(i)));
                    let sign = int((s1 * s2) as i64);
                    out.add_term(SymbolKey::new(xm, xi, blade), -(&ca * k * sign));
                }
            }
        }
    }
    Ok(out)
}

/// Natural Lie derivative of a contravariant tensor field symbol:
/// `⟨X,η⟩σ − ⟨X,ξ⟩(ζ∂_ξ)σ − σ(ξ; ζ∧i_X ω)`.
pub fn lie_tensor(x: &PolyVectorField, sigma: &TensorFieldSymbol) -> Result<TensorFieldSymbol> {
    let out = lie_three_term(x, sigma.symbol(), Part::Principal)?;
    TensorFieldSymbol::new(out, sigma.degree())
}

/// `L_X` on functions.
pub fn lie_function(x: &PolyVectorField, f: &PolyFunction) -> PolyFunction {
    x.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn field(dim: usize, x: &[u32], j: usize) -> PolyVectorField {
        PolyVectorField::monomial(dim, x, j, int(1)).unwrap()
    }

    fn both(x: &PolyVectorField, d: &OpSymbol) -> OpSymbol {
        let a = lie_op(x, d).unwrap();
        let b = lie_symbolic(x, d).unwrap();
        assert_eq!(a, b, "operational and symbolic Lie derivatives differ");
        a
    }

    #[test]
    fn lie_form_examples() {
        let d1 = field(2, &[0, 0], 0);
        let w = AltField::monomial(2, &[1, 0], &[1], int(1)).unwrap();
        assert_eq!(lie_form(&d1, &w).unwrap(), AltField::monomial(2, &[0, 0], &[1], int(1)).unwrap());
        let e = field(2, &[1, 0], 0);
        let dx1 = AltField::monomial(2, &[0, 0], &[0], int(1)).unwrap();
        assert_eq!(lie_form(&e, &dx1).unwrap(), dx1);
        let dx2 = AltField::monomial(2, &[0, 0], &[1], int(1)).unwrap();
        assert!(lie_form(&d1, &dx2).unwrap().is_zero());
    }

    #[test]
    fn lie_op_examples() {
        let d1 = field(2, &[0, 0], 0);
        let d = OpSymbol::monomial(2, 2, &[0, 0], &[1, 1], &[], int(3)).unwrap();
        assert!(both(&d1, &d).is_zero());

        let e = field(2, &[1, 0], 0);
        let xi1 = OpSymbol::monomial(2, 1, &[0, 0], &[1, 0], &[], int(1)).unwrap();
        assert_eq!(both(&e, &xi1), xi1.scale(&int(-1)));

        let d = OpSymbol::monomial(2, 0, &[0, 0], &[0, 0], &[0], int(1)).unwrap();
        assert!(both(&d1, &d).is_zero());
    }

    #[test]
    fn lie_symbolic_examples() {
        // linear field on a constant symbol: the gl(m) action
        let x = field(2, &[0, 1], 0);
        let d = OpSymbol::monomial(2, 2, &[0, 0], &[1, 1], &[], int(1)).unwrap();
        // −⟨X,ξ⟩ ζ∂_ξ with X = x²∂₁: ξ₁ξ₂ ↦ −ξ₁·∂_{ξ₂}(ξ₁ξ₂) = −ξ₁²
        let expected = OpSymbol::monomial(2, 2, &[0, 0], &[2, 0], &[], int(-1)).unwrap();
        assert_eq!(both(&x, &d), expected);

        let x = field(2, &[2, 0], 1);
        let d = OpSymbol::monomial(2, 0, &[0, 0], &[0, 0], &[0, 1], int(1)).unwrap();
        // e₂ ∧ i_{ε¹}(e₁∧e₂) = e₂∧e₂ = 0, and X does not depend on x²
        assert!(both(&x, &d).is_zero());

        // m = 3: (L_X ω)₁₃ picks up ω₂₃ ∂₁X², so L_X⟨e₁₃,·⟩ = −2x¹⟨e₂₃,·⟩
        let x = field(3, &[2, 0, 0], 1);
        let d = OpSymbol::monomial(3, 0, &[0, 0, 0], &[0, 0, 0], &[0, 2], int(1)).unwrap();
        let expected = OpSymbol::monomial(3, 0, &[1, 0, 0], &[0, 0, 0], &[1, 2], int(-2)).unwrap();
        assert_eq!(both(&x, &d), expected);
    }

    #[test]
    fn tensor_lie_example() {
        let x = field(2, &[1, 0], 0);
        let s = TensorFieldSymbol::new(OpSymbol::monomial(2, 1, &[0, 0], &[1, 0], &[], int(1)).unwrap(), 1).unwrap();
        let got = lie_tensor(&x, &s).unwrap();
        assert_eq!(got.symbol(), &s.symbol().scale(&int(-1)));
        let c = field(2, &[0, 0], 1);
        assert!(lie_tensor(&c, &s).unwrap().is_zero());
    }
}
