//! Global decompositions of first-order operators on `p`-forms and of
//! second-order operators on functions into Lie derivatives along fields.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::frac;
use crate::symbol::{extract_symbol, lie_form, AltField, MultivectorField, OpSymbol, PolyFunction, PolyVectorField};
use crate::tensor::MultiIndex;

/// `D′ = Σᵢ ⟨Λᵢ, L_{Xᵢ} ·⟩ + ⟨Ω, ·⟩` for `D′ ∈ 𝒟¹ₚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionD1p {
    pub dim: usize,
    pub grade: usize,
    pub pairs: Vec<(MultivectorField, PolyVectorField)>,
    pub remainder: MultivectorField,
}

/// `D″ = Σ Λ L_X∘L_Y + Σ Ω L_Z + Θ` for `D″ ∈ 𝒟²₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionD20 {
    pub dim: usize,
    pub triples: Vec<(PolyFunction, PolyVectorField, PolyVectorField)>,
    pub pairs: Vec<(PolyFunction, PolyVectorField)>,
    pub remainder: PolyFunction,
}

fn coordinate_field(dim: usize, i: usize) -> PolyVectorField {
    let mut x = PolyVectorField::zero(dim);
    x.add_term(MultiIndex::zero(dim), i, crate::scalar::one());
    x
}

fn check_order(d: &OpSymbol, bound: usize) -> Result<()> {
    match d.xi_degree() {
        Some(found) if found > bound => Err(Error::OrderExceeded { bound, found }),
        _ => Ok(()),
    }
}

/// Canonical decomposition along the coordinate fields `∂ᵢ`:
/// `D′(ω) = Σ A^{i,I} ∂ᵢω_I + Σ B^I ω_I` gives `Xᵢ = ∂ᵢ`, `Λᵢ = A^{i,·}`, `Ω = B`.
pub fn decompose_d1p(d: &OpSymbol) -> Result<DecompositionD1p> {
    check_order(d, 1)?;
    let dim = d.dim();
    let mut lambdas: BTreeMap<usize, MultivectorField> = BTreeMap::new();
    let mut remainder = AltField::zero(dim, d.grade());
    for (key, c) in d.terms() {
        match key.xi.exponents().iter().position(|&e| e == 1) {
            Some(i) => {
                lambdas.entry(i).or_insert_with(|| AltField::zero(dim, d.grade())).add_term(key.x, key.blade, c.clone())
            }
            None => remainder.add_term(key.x, key.blade, c.clone()),
        }
    }
    let pairs = lambdas.into_iter().map(|(i, l)| (l, coordinate_field(dim, i))).collect();
    Ok(DecompositionD1p { dim, grade: d.grade(), pairs, remainder })
}

/// The operator a decomposition stands for, rebuilt by acting on test forms.
pub fn reconstruct_d1p(dec: &DecompositionD1p) -> Result<OpSymbol> {
    extract_symbol(dec.dim, dec.grade, 1, |omega| {
        let mut acc = dec.remainder.pair(omega)?;
        for (lambda, x) in &dec.pairs {
            acc.add_assign(&lambda.pair(&lie_form(x, omega)?)?);
        }
        Ok(acc)
    })
}

/// Canonical decomposition of `D″ = Σ A^{ij}∂ᵢ∂ⱼ + Σ Bⁱ∂ᵢ + C` with `A` symmetrized.
pub fn decompose_d20(d: &OpSymbol) -> Result<DecompositionD20> {
    if d.grade() != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: d.grade() });
    }
    check_order(d, 2)?;
    let dim = d.dim();
    let mut second: BTreeMap<(usize, usize), PolyFunction> = BTreeMap::new();
    let mut first: BTreeMap<usize, PolyFunction> = BTreeMap::new();
    let mut remainder = PolyFunction::zero(dim);
    let half = frac(1, 2);
    for (key, c) in d.terms() {
        let idx: Vec<usize> = (0..dim).flat_map(|i| std::iter::repeat_n(i, key.xi.get(i) as usize)).collect();
        match idx.as_slice() {
            [] => remainder.add_term(key.x, c.clone()),
            [i] => first.entry(*i).or_insert_with(|| PolyFunction::zero(dim)).add_term(key.x, c.clone()),
            [i, j] if i == j => {
                second.entry((*i, *j)).or_insert_with(|| PolyFunction::zero(dim)).add_term(key.x, c.clone())
            }
            [i, j] => {
                for ij in [(*i, *j), (*j, *i)] {
                    second.entry(ij).or_insert_with(|| PolyFunction::zero(dim)).add_term(key.x, c * &half);
                }
            }
            _ => unreachable!("order checked"),
        }
    }
    let triples = second
        .into_iter()
        .filter(|(_, l)| !l.is_zero())
        .map(|((i, j), l)| (l, coordinate_field(dim, i), coordinate_field(dim, j)))
        .collect();
    let pairs = first.into_iter().filter(|(_, l)| !l.is_zero()).map(|(i, l)| (l, coordinate_field(dim, i))).collect();
    Ok(DecompositionD20 { dim, triples, pairs, remainder })
}

pub fn reconstruct_d20(dec: &DecompositionD20) -> Result<OpSymbol> {
    extract_symbol(dec.dim, 0, 2, |f| {
        let f = f.to_function();
        let mut acc = dec.remainder.mul(&f);
        for (lambda, x, y) in &dec.triples {
            acc.add_assign(&lambda.mul(&x.apply(&y.apply(&f))));
        }
        for (omega, z) in &dec.pairs {
            acc.add_assign(&omega.mul(&z.apply(&f)));
        }
        Ok(acc)
    })
}

impl DecompositionD1p {
    /// Concatenation of two decompositions of operators on the same forms.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Ok(Self { dim: self.dim, grade: self.grade, pairs, remainder: self.remainder.add(&other.remainder)? })
    }
}

impl DecompositionD20 {
    pub fn merge(&self, other: &Self) -> Self {
        let mut triples = self.triples.clone();
        triples.extend(other.triples.iter().cloned());
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Self { dim: self.dim, triples, pairs, remainder: self.remainder.add(&other.remainder) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn d1p_examples() {
        // ∂₁ω₂ on 1-forms in ℝ²
        let d = OpSymbol::monomial(2, 1, &[0, 0], &[1, 0], &[1], int(1)).unwrap();
        let dec = decompose_d1p(&d).unwrap();
        assert_eq!(dec.pairs.len(), 1);
        assert_eq!(dec.pairs[0].0, AltField::monomial(2, &[0, 0], &[1], int(1)).unwrap());
        assert_eq!(dec.pairs[0].1, coordinate_field(2, 0));
        assert!(dec.remainder.is_zero());
        assert_eq!(reconstruct_d1p(&dec).unwrap(), d);

        let z = OpSymbol::monomial(2, 1, &[1, 0], &[0, 0], &[0], int(2)).unwrap();
        let dec = decompose_d1p(&z).unwrap();
        assert!(dec.pairs.is_empty());
        assert_eq!(dec.remainder, AltField::monomial(2, &[1, 0], &[0], int(2)).unwrap());

        let dec = decompose_d1p(&OpSymbol::new(2, 1, 1).unwrap()).unwrap();
        assert!(dec.pairs.is_empty() && dec.remainder.is_zero());

        let two = OpSymbol::monomial(2, 2, &[0, 0], &[1, 1], &[0], int(1)).unwrap();
        assert!(decompose_d1p(&two).is_err());
    }

    #[test]
    fn d20_symmetrizes_mixed_derivatives() {
        let d = OpSymbol::monomial(2, 2, &[0, 1], &[1, 1], &[], int(1)).unwrap();
        let dec = decompose_d20(&d).unwrap();
        assert_eq!(dec.triples.len(), 2);
        assert_eq!(reconstruct_d20(&dec).unwrap(), d);
        let three = OpSymbol::monomial(2, 3, &[0, 0], &[2, 1], &[], int(1)).unwrap();
        assert!(decompose_d20(&three).is_err());
    }
}
