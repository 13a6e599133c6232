use std::fmt;
use std::str::FromStr;

use super::decomposition::{decompose_d1p, decompose_d20, DecompositionD1p, DecompositionD20};
use crate::error::{Error, Result};
use crate::scalar::frac;
use crate::symbol::{de_rham, dual_d, extract_symbol, interior_field, lie_form, lie_function, OpSymbol, SymbolKey};
use crate::tensor::MultiIndex;

pub fn identity(d: &OpSymbol) -> OpSymbol {
    d.clone()
}

/// Keeps the zeroth-order part of a scalar operator: `Σ c_{μ,0} x^μ`.
pub fn i_zero(d: &OpSymbol) -> Result<OpSymbol> {
    if d.grade() != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: d.grade() });
    }
    let mut out = OpSymbol::new(d.dim(), d.order(), 0)?;
    for (key, c) in d.terms().filter(|(k, _)| k.xi.is_zero()) {
        out.insert(*key, c.clone())?;
    }
    Ok(out)
}

/// `K(D′) = (1+p)⁻¹ Σ ⟨Xᵢ ∧ Λᵢ, ·⟩`, a zeroth-order operator on `(p+1)`-forms.
pub fn k_d1p(d: &OpSymbol) -> Result<OpSymbol> {
    k_d1p_from(&decompose_d1p(d)?)
}

pub fn k_d1p_from(dec: &DecompositionD1p) -> Result<OpSymbol> {
    if dec.grade + 1 > dec.dim {
        return Err(Error::DegreeMismatch { expected: dec.dim - 1, found: dec.grade });
    }
    let norm = frac(1, dec.grade as i64 + 1);
    let mut out = OpSymbol::new(dec.dim, 0, dec.grade + 1)?;
    let zero = MultiIndex::zero(dec.dim);
    for (lambda, x) in &dec.pairs {
        let wedge = x.to_alt_field().wedge(lambda)?;
        for ((mu, blade), c) in wedge.terms() {
            out.add_term(SymbolKey::new(*mu, zero, *blade), c * &norm);
        }
    }
    Ok(out)
}

/// `K(D″)(ν) = ½ Σ Λ (i_X L_Y ν + L_X i_Y ν) + Σ Ω i_Z ν` on 1-forms.
pub fn k_d20(d: &OpSymbol) -> Result<OpSymbol> {
    k_d20_from(&decompose_d20(d)?)
}

pub fn k_d20_from(dec: &DecompositionD20) -> Result<OpSymbol> {
    if dec.dim == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let half = frac(1, 2);
    extract_symbol(dec.dim, 1, 1, |nu| {
        let mut acc = crate::symbol::PolyFunction::zero(dec.dim);
        for (lambda, x, y) in &dec.triples {
            let a = interior_field(x, &lie_form(y, nu)?)?.to_function();
            let b = lie_function(x, &interior_field(y, nu)?.to_function());
            acc.add_assign(&lambda.mul(&a.add(&b)).scale(&half));
        }
        for (omega, z) in &dec.pairs {
            acc.add_assign(&omega.mul(&interior_field(z, nu)?.to_function()));
        }
        Ok(acc)
    })
}

/// `d* ∘ K` on `𝒟¹ₚ`.
pub fn dstar_k(d: &OpSymbol) -> Result<OpSymbol> {
    dual_d(&k_d1p(d)?)
}

/// The same operator written without `K`: `α ↦ (1+p)⁻¹ Σ ⟨Λᵢ, i_{Xᵢ} dα⟩`.
pub fn dstar_k_closed_form(dec: &DecompositionD1p) -> Result<OpSymbol> {
    let norm = frac(1, dec.grade as i64 + 1);
    extract_symbol(dec.dim, dec.grade, 1, |alpha| {
        let dalpha = de_rham(alpha);
        let mut acc = crate::symbol::PolyFunction::zero(dec.dim);
        for (lambda, x) in &dec.pairs {
            acc.add_assign(&lambda.pair(&interior_field(x, &dalpha)?)?);
        }
        Ok(acc.scale(&norm))
    })
}

/// Named canonical operators, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonicalOp {
    Id,
    I0,
    DStar,
    K1p,
    K20,
    DStarK,
}

impl CanonicalOp {
    pub const ALL: [CanonicalOp; 6] =
        [CanonicalOp::Id, CanonicalOp::I0, CanonicalOp::DStar, CanonicalOp::K1p, CanonicalOp::K20, CanonicalOp::DStarK];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalOp::Id => "id",
            CanonicalOp::I0 => "i0",
            CanonicalOp::DStar => "dstar",
            CanonicalOp::K1p => "K1p",
            CanonicalOp::K20 => "K20",
            CanonicalOp::DStarK => "dstarK",
        }
    }

    /// Target `(q, ℓ)` for a source `(p, k)`, or `None` if the operator is not
    /// defined there.
    pub fn target(self, m: usize, p: usize, k: usize) -> Option<(usize, usize)> {
        match self {
            CanonicalOp::Id => Some((p, k)),
            CanonicalOp::I0 => (p == 0).then_some((0, k)),
            CanonicalOp::DStar => (p >= 1).then(|| (p - 1, k + 1)),
            CanonicalOp::K1p => (k == 1 && p < m).then_some((p + 1, 0)),
            CanonicalOp::K20 => (k == 2 && p == 0 && m >= 1).then_some((1, 1)),
            CanonicalOp::DStarK => (k == 1 && p < m).then_some((p, 1)),
        }
    }

    pub fn apply(self, d: &OpSymbol) -> Result<OpSymbol> {
        match self {
            CanonicalOp::Id => Ok(identity(d)),
            CanonicalOp::I0 => i_zero(d),
            CanonicalOp::DStar => dual_d(d),
            CanonicalOp::K1p => k_d1p(d),
            CanonicalOp::K20 => k_d20(d),
            CanonicalOp::DStarK => dstar_k(d),
        }
    }
}

impl fmt::Display for CanonicalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CanonicalOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CanonicalOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown operator `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::symbol::{apply, AltField};

    fn sym(dim: usize, order: usize, terms: &[(&[u32], &[u32], &[usize], i64, i64)]) -> OpSymbol {
        let grade = terms[0].2.len();
        let mut out = OpSymbol::new(dim, order, grade).unwrap();
        for (x, xi, idx, n, d) in terms {
            out = out.add(&OpSymbol::monomial(dim, order, x, xi, idx, frac(*n, *d)).unwrap()).unwrap();
        }
        out
    }

    #[test]
    fn k_of_first_order_operator() {
        // ∂₁ω₂ ↦ ½ ω₁₂
        let d = sym(2, 1, &[(&[0, 0], &[1, 0], &[1], 1, 1)]);
        assert_eq!(k_d1p(&d).unwrap(), sym(2, 0, &[(&[0, 0], &[0, 0], &[0, 1], 1, 2)]));
        let zero = OpSymbol::new(2, 1, 1).unwrap();
        assert!(k_d1p(&zero).unwrap().is_zero());
        // top degree forms have no room for K
        let top = sym(2, 1, &[(&[0, 0], &[1, 0], &[0, 1], 1, 1)]);
        assert!(k_d1p(&top).is_err());
    }

    #[test]
    fn k_of_second_order_operator() {
        // ∂₁∂₂ ↦ ν ↦ ½(∂₂ν₁ + ∂₁ν₂)
        let d = sym(2, 2, &[(&[0, 0], &[1, 1], &[], 1, 1)]);
        let expected = sym(2, 1, &[(&[0, 0], &[0, 1], &[0], 1, 2), (&[0, 0], &[1, 0], &[1], 1, 2)]);
        assert_eq!(k_d20(&d).unwrap(), expected);
        // ∂₁ ↦ ν₁
        let d = sym(2, 2, &[(&[0, 0], &[1, 0], &[], 1, 1)]);
        assert_eq!(k_d20(&d).unwrap(), sym(2, 1, &[(&[0, 0], &[0, 0], &[0], 1, 1)]));
        let three = sym(2, 3, &[(&[0, 0], &[3, 0], &[], 1, 1)]);
        assert!(k_d20(&three).is_err());
    }

    #[test]
    fn k20_on_exact_forms_recovers_operator() {
        // K(D)(df) = (D − D(1)) f for D = x¹∂₁∂₁ + ∂₂ + 3
        let d =
            sym(2, 2, &[(&[1, 0], &[2, 0], &[], 1, 1), (&[0, 0], &[0, 1], &[], 1, 1), (&[0, 0], &[0, 0], &[], 3, 1)]);
        let k = k_d20(&d).unwrap();
        let f = AltField::monomial(2, &[3, 1], &[], int(1)).unwrap();
        assert_eq!(apply(&k, &de_rham(&f)).unwrap(), apply(&d.sub(&d.homogeneous_part(0)).unwrap(), &f).unwrap());
    }

    #[test]
    fn dstar_k_example() {
        // ∂₁ω₂ ↦ ½(∂₁α₂ − ∂₂α₁)
        let d = sym(2, 1, &[(&[0, 0], &[1, 0], &[1], 1, 1)]);
        let expected = sym(2, 1, &[(&[0, 0], &[1, 0], &[1], 1, 2), (&[0, 0], &[0, 1], &[0], -1, 2)]);
        assert_eq!(dstar_k(&d).unwrap(), expected);
        assert_eq!(dstar_k_closed_form(&decompose_d1p(&d).unwrap()).unwrap(), expected);
    }

    #[test]
    fn i_zero_keeps_multiplication_part() {
        let d = sym(2, 2, &[(&[1, 0], &[0, 0], &[], 2, 1), (&[0, 0], &[1, 1], &[], 1, 1)]);
        assert_eq!(i_zero(&d).unwrap(), sym(2, 2, &[(&[1, 0], &[0, 0], &[], 2, 1)]));
        assert!(i_zero(&sym(2, 1, &[(&[0, 0], &[1, 0], &[0], 1, 1)])).is_err());
    }

    #[test]
    fn names_round_trip() {
        for op in CanonicalOp::ALL {
            assert_eq!(op.name().parse::<CanonicalOp>().unwrap(), op);
        }
        assert!("nope".parse::<CanonicalOp>().is_err());
    }
}
