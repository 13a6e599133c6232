use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{accumulate, int, Rational};
use crate::tensor::{check_ambient, Blade, MultiIndex, Polynomial};

/// Functions on `ℝᵐ`, restricted to polynomials.
pub type PolyFunction = Polynomial;

/// Field of exterior tensors with polynomial coefficients:
/// `Σ c_{μ,I} x^μ e_I`.
///
/// Read with covariant slots it is a differential form; read with
/// contravariant slots it is a multivector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltField {
    dim: usize,
    grade: usize,
    terms: BTreeMap<(MultiIndex, Blade), Rational>,
}

pub type FormField = AltField;
pub type MultivectorField = AltField;

impl AltField {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Self { dim, grade, terms: BTreeMap::new() }
    }

    pub fn new(dim: usize, grade: usize) -> Result<Self> {
        check_ambient(dim)?;
        if grade > dim {
            return Err(Error::DegreeMismatch { expected: dim, found: grade });
        }
        Ok(Self::zero(dim, grade))
    }

    /// `c · x^μ dx^{i₁} ∧ … ∧ dx^{iₚ}` for arbitrary (0-based) indices.
    pub fn monomial(dim: usize, x: &[u32], indices: &[usize], c: Rational) -> Result<Self> {
        let mut out = Self::new(dim, indices.len())?;
        let mu = MultiIndex::from_slice(x)?;
        if mu.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: mu.len() });
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        if let Some((sign, blade)) = Blade::from_indices(indices) {
            out.add_term(mu, blade, c * int(sign as i64));
        }
        Ok(out)
    }

    /// Scalar field viewed as a 0-form.
    pub fn from_function(f: &PolyFunction) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        for (mu, c) in f.terms() {
            out.add_term(*mu, Blade::EMPTY, c.clone());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, Blade), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, x: MultiIndex, blade: Blade, c: Rational) {
        debug_assert_eq!(blade.grade(), self.grade);
        accumulate(&mut self.terms, (x, blade), c);
    }

    pub fn component(&self, blade: Blade) -> PolyFunction {
        PolyFunction::from_terms(
            self.dim,
            self.terms.iter().filter(|((_, b), _)| *b == blade).map(|((x, _), c)| (*x, c.clone())),
        )
    }

    /// The function carried by a 0-form.
    pub fn to_function(&self) -> PolyFunction {
        debug_assert_eq!(self.grade, 0);
        self.component(Blade::EMPTY)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for ((x, b), c) in &other.terms {
            out.add_term(*x, *b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim, self.grade);
        }
        Self { dim: self.dim, grade: self.grade, terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul_function(&self, f: &PolyFunction) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for ((x, b), c) in &self.terms {
            for (mu, d) in f.terms() {
                out.add_term(x.add(mu), *b, c * d);
            }
        }
        out
    }

    /// Pointwise exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut out = Self::new(self.dim, self.grade + other.grade)?;
        for ((xa, ba), ca) in &self.terms {
            for ((xb, bb), cb) in &other.terms {
                if let Some((sign, blade)) = ba.wedge(*bb) {
                    out.add_term(xa.add(xb), blade, ca * cb * int(sign as i64));
                }
            }
        }
        Ok(out)
    }

    /// Pointwise full contraction `⟨Λ, ω⟩`.
    pub fn pair(&self, other: &Self) -> Result<PolyFunction> {
        self.check_same(other)?;
        let mut out = PolyFunction::zero(self.dim);
        for ((xa, ba), ca) in &self.terms {
            for ((xb, bb), cb) in &other.terms {
                if ba == bb {
                    out.add_term(xa.add(xb), ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// `∂_i` applied to every coefficient.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for ((x, b), c) in &self.terms {
            if let Some(lower) = x.decrement(i) {
                out.add_term(lower, *b, c * int(x.get(i) as i64));
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.grade != other.grade {
            return Err(Error::DegreeMismatch { expected: self.grade, found: other.grade });
        }
        Ok(())
    }
}

/// Vector field `Σ c_{ν,j} x^ν ∂_j` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    dim: usize,
    terms: BTreeMap<(MultiIndex, usize), Rational>,
}

impl PolyVectorField {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    /// `c · x^ν ∂_j` (0-based `j`).
    pub fn monomial(dim: usize, x: &[u32], j: usize, c: Rational) -> Result<Self> {
        check_ambient(dim)?;
        let nu = MultiIndex::from_slice(x)?;
        if nu.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: nu.len() });
        }
        if j >= dim {
            return Err(Error::IndexOutOfRange { index: j, dim });
        }
        let mut out = Self::zero(dim);
        out.add_term(nu, j, c);
        Ok(out)
    }

    pub fn from_components(components: &[PolyFunction]) -> Self {
        let dim = components.len();
        let mut out = Self::zero(dim);
        for (j, f) in components.iter().enumerate() {
            for (nu, c) in f.terms() {
                out.add_term(*nu, j, c.clone());
            }
        }
        out
    }

    /// Every monomial field `x^ν ∂_j` with `|ν| = degree`.
    pub fn monomials_of_degree(dim: usize, degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for nu in MultiIndex::of_degree(dim, degree) {
            for j in 0..dim {
                let mut x = Self::zero(dim);
                x.add_term(nu, j, crate::scalar::one());
                out.push(x);
            }
        }
        out
    }

    /// Every monomial field with `|ν| ≤ max_degree`.
    pub fn monomials_up_to(dim: usize, max_degree: usize) -> Vec<Self> {
        (0..=max_degree).flat_map(|d| Self::monomials_of_degree(dim, d)).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, x: MultiIndex, j: usize, c: Rational) {
        accumulate(&mut self.terms, (x, j), c);
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(x, _)| x.degree()).max()
    }

    pub fn component(&self, j: usize) -> PolyFunction {
        PolyFunction::from_terms(
            self.dim,
            self.terms.iter().filter(|((_, i), _)| *i == j).map(|((x, _), c)| (*x, c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((x, j), c) in &other.terms {
            out.add_term(*x, *j, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for ((x, j), c) in &self.terms {
            out.add_term(*x, *j, c * s);
        }
        out
    }

    pub fn mul_function(&self, f: &PolyFunction) -> Self {
        let mut out = Self::zero(self.dim);
        for ((x, j), c) in &self.terms {
            for (mu, d) in f.terms() {
                out.add_term(x.add(mu), *j, c * d);
            }
        }
        out
    }

    /// Derivative of a function along the field, `X·f = Xʲ ∂ⱼ f`.
    pub fn apply(&self, f: &PolyFunction) -> PolyFunction {
        let mut out = PolyFunction::zero(self.dim);
        for j in 0..self.dim {
            let comp = self.component(j);
            if comp.is_zero() {
                continue;
            }
            out.add_assign(&comp.mul(&f.derivative(j)));
        }
        out
    }

    /// Lie bracket `[X, Y]ʲ = X(Yʲ) − Y(Xʲ)`.
    pub fn bracket(&self, other: &Self) -> Self {
        let comps: Vec<PolyFunction> =
            (0..self.dim).map(|j| self.apply(&other.component(j)).sub(&other.apply(&self.component(j)))).collect();
        Self::from_components(&comps)
    }

    /// The field as a grade-1 multivector field.
    pub fn to_alt_field(&self) -> MultivectorField {
        let mut out = AltField::zero(self.dim, 1);
        for ((x, j), c) in &self.terms {
            out.add_term(*x, Blade::single(*j), c.clone());
        }
        out
    }
}
