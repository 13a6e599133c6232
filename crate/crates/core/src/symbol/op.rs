use std::collections::BTreeMap;

use num_traits::Zero;

use super::field::{FormField, PolyFunction};
use crate::error::{Error, Result};
use crate::scalar::{accumulate, from_bigint, int, Rational};
use crate::tensor::{check_ambient, Blade, MultiIndex};

/// One monomial slot of an operator symbol: `x^μ ξ^α ⟨e_I, ·⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolKey {
    pub x: MultiIndex,
    pub xi: MultiIndex,
    pub blade: Blade,
}

impl SymbolKey {
    pub fn new(x: MultiIndex, xi: MultiIndex, blade: Blade) -> Self {
        Self { x, xi, blade }
    }
}

/// Symbol of a differential operator of order `≤ k` from `p`-forms to functions,
///
/// `D(x; ξ; ω) = Σ c_{μ,α,I} x^μ ξ^α ⟨e_I, ω⟩`, i.e. `D(ω) = Σ c x^μ ∂^α ω_I`.
///
/// The bound `|α| ≤ k` is checked on every insertion; nothing is truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSymbol {
    dim: usize,
    order: usize,
    grade: usize,
    terms: BTreeMap<SymbolKey, Rational>,
}

impl OpSymbol {
    pub fn new(dim: usize, order: usize, grade: usize) -> Result<Self> {
        check_ambient(dim)?;
        if grade > dim {
            return Err(Error::DegreeMismatch { expected: dim, found: grade });
        }
        Ok(Self::zero_unchecked(dim, order, grade))
    }

    pub(crate) fn zero_unchecked(dim: usize, order: usize, grade: usize) -> Self {
        Self { dim, order, grade, terms: BTreeMap::new() }
    }

    /// `c · x^μ ξ^α ⟨e_{i₁}∧…∧e_{iₚ}, ·⟩` for arbitrary (0-based) indices.
    pub fn monomial(dim: usize, order: usize, x: &[u32], xi: &[u32], indices: &[usize], c: Rational) -> Result<Self> {
        let mut out = Self::new(dim, order, indices.len())?;
        let x = MultiIndex::from_slice(x)?;
        let xi = MultiIndex::from_slice(xi)?;
        for len in [x.len(), xi.len()] {
            if len != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: len });
            }
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        if let Some((sign, blade)) = Blade::from_indices(indices) {
            out.insert(SymbolKey::new(x, xi, blade), c * int(sign as i64))?;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Declared order bound `k`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Form degree `p` of the argument.
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &SymbolKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest `ξ`-degree actually present.
    pub fn xi_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.xi.degree()).max()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.x.degree()).max()
    }

    pub fn insert(&mut self, key: SymbolKey, c: Rational) -> Result<()> {
        if key.xi.degree() > self.order {
            return Err(Error::OrderExceeded { bound: self.order, found: key.xi.degree() });
        }
        debug_assert_eq!(key.blade.grade(), self.grade);
        accumulate(&mut self.terms, key, c);
        Ok(())
    }

    /// Insertion for internal routines whose output order is known a priori.
    pub(crate) fn add_term(&mut self, key: SymbolKey, c: Rational) {
        debug_assert!(key.xi.degree() <= self.order, "order bound violated: {key:?}");
        debug_assert_eq!(key.blade.grade(), self.grade);
        accumulate(&mut self.terms, key, c);
    }

    /// Same operator, regarded in `𝒟ₚ^order` for a different bound.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        if let Some(d) = self.xi_degree() {
            if d > order {
                return Err(Error::OrderExceeded { bound: order, found: d });
            }
        }
        Ok(Self { order, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, *k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero_unchecked(self.dim, self.order, self.grade);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (*k, c * s)).collect();
        }
        out
    }

    /// Part with `ξ`-degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero_unchecked(self.dim, self.order, self.grade);
        out.terms = self.terms.iter().filter(|(k, _)| k.xi.degree() == d).map(|(k, c)| (*k, c.clone())).collect();
        out
    }

    /// Part with `x`-degree zero (the value of the coefficients at the origin).
    pub fn constant_part(&self) -> Self {
        let mut out = Self::zero_unchecked(self.dim, self.order, self.grade);
        out.terms = self.terms.iter().filter(|(k, _)| k.x.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.grade != other.grade {
            return Err(Error::DegreeMismatch { expected: self.grade, found: other.grade });
        }
        if self.order != other.order {
            return Err(Error::OrderExceeded { bound: self.order, found: other.order });
        }
        Ok(())
    }
}

/// Apply `D` to a form: `D(ω) = Σ c x^μ ∂^α ω_I`.
pub fn apply(d: &OpSymbol, omega: &FormField) -> Result<PolyFunction> {
    if d.dim != omega.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim, found: omega.dim() });
    }
    if d.grade != omega.grade() {
        return Err(Error::DegreeMismatch { expected: d.grade, found: omega.grade() });
    }
    let mut out = PolyFunction::zero(d.dim);
    for ((nu, blade), w) in omega.terms() {
        for (key, c) in d.terms.iter().filter(|(k, _)| k.blade == *blade) {
            if let Some(rest) = nu.checked_sub(&key.xi) {
                out.add_term(rest.add(&key.x), c * w * from_bigint(nu.falling(&key.xi)));
            }
        }
    }
    Ok(out)
}

/// Homogeneous symbol of a single `ξ`-degree: a contravariant tensor field
/// in `Γ(∨ʳTU ⊗ ∧ᵖTU)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFieldSymbol {
    degree: usize,
    symbol: OpSymbol,
}

impl TensorFieldSymbol {
    pub fn new(symbol: OpSymbol, degree: usize) -> Result<Self> {
        if let Some(bad) = symbol.terms.keys().find(|k| k.xi.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.xi.degree() });
        }
        let symbol = symbol.with_order(degree)?;
        Ok(Self { degree, symbol })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn symbol(&self) -> &OpSymbol {
        &self.symbol
    }

    pub fn into_symbol(self) -> OpSymbol {
        self.symbol
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero()
    }
}

/// `σ(D)`, the top present `ξ`-degree part.
pub fn principal_symbol(d: &OpSymbol) -> Result<TensorFieldSymbol> {
    let top = d.xi_degree().ok_or(Error::ZeroOperator)?;
    TensorFieldSymbol::new(d.homogeneous_part(top), top)
}
