use super::field::{AltField, FormField, PolyVectorField};
use super::op::{OpSymbol, SymbolKey};
use crate::error::{Error, Result};
use crate::scalar::int;
use crate::tensor::Blade;

/// Exterior derivative `d(f dx^J) = Σᵢ ∂ᵢf dxⁱ ∧ dx^J`. Top-degree forms map to zero.
pub fn de_rham(omega: &FormField) -> FormField {
    let dim = omega.dim();
    let mut out = AltField::zero(dim, omega.grade() + 1);
    if omega.grade() >= dim {
        return out;
    }
    for ((x, blade), c) in omega.terms() {
        for i in 0..dim {
            let Some(lower) = x.decrement(i) else { continue };
            if let Some((sign, b)) = Blade::single(i).wedge(*blade) {
                out.add_term(lower, b, c * int(x.get(i) as i64 * sign as i64));
            }
        }
    }
    out
}

/// Interior product of a form with a polynomial vector field.
pub fn interior_field(x: &PolyVectorField, omega: &FormField) -> Result<FormField> {
    if x.dim() != omega.dim() {
        return Err(Error::DimensionMismatch { expected: omega.dim(), found: x.dim() });
    }
    if omega.grade() == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = AltField::zero(omega.dim(), omega.grade() - 1);
    for ((xw, blade), c) in omega.terms() {
        for ((nu, j), a) in x.terms() {
            if let Some((sign, rest)) = blade.contract(*j) {
                out.add_term(xw.add(nu), rest, c * a * int(sign as i64));
            }
        }
    }
    Ok(out)
}

/// `d*` on operators: `(d*D)(α) = D(dα)`, sending `𝒟ₚᵏ` to `𝒟ₚ₋₁ᵏ⁺¹`.
pub fn dual_d(d: &OpSymbol) -> Result<OpSymbol> {
    if d.grade() == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = OpSymbol::new(d.dim(), d.order() + 1, d.grade() - 1)?;
    for (key, c) in d.terms() {
        // (dα)_I = Σ_s (−1)^s ∂_{i_s} α_{I∖i_s}
        for i in key.blade.indices() {
            let (sign, rest) = key.blade.contract(i).expect("index is in blade");
            out.add_term(SymbolKey::new(key.x, key.xi.increment(i), rest), c * int(sign as i64));
        }
    }
    Ok(out)
}
