use std::collections::BTreeMap;

use num_traits::Zero;

use super::Blade;
use crate::error::{Error, Result};
use crate::scalar::{accumulate, Rational};

/// Vector of `ℝᵐ` (or, by the same layout, a covector of `(ℝᵐ)*`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    comps: Vec<Rational>,
}

/// Covectors share the component layout of vectors.
pub type Covector = Vector;

impl Vector {
    pub fn new(comps: Vec<Rational>) -> Self {
        Self { comps }
    }

    pub fn zero(dim: usize) -> Self {
        Self { comps: vec![Rational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[i] = crate::scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| crate::scalar::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.comps
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.comps[i]
    }

    /// `⟨X, ξ⟩`.
    pub fn eval(&self, other: &Vector) -> Result<Rational> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.comps.iter().zip(&other.comps).map(|(a, b)| a * b).sum())
    }

    pub fn to_alt(&self) -> AltTensor {
        let mut out = AltTensor::zero(self.dim(), 1);
        for (i, c) in self.comps.iter().enumerate() {
            accumulate(&mut out.terms, Blade::single(i), c.clone());
        }
        out
    }
}

/// Element of `∧ᵖℝᵐ` or `∧ᵖ(ℝᵐ)*`, sparse over increasing index tuples.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltTensor {
    dim: usize,
    grade: usize,
    terms: BTreeMap<Blade, Rational>,
}

pub type AltCovector = AltTensor;

impl AltTensor {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Self { dim, grade, terms: BTreeMap::new() }
    }

    /// `e_{i₁} ∧ … ∧ e_{iₚ}` for arbitrary (0-based) indices; repeated indices give zero.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut out = Self::zero(dim, indices.len());
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        if let Some((sign, blade)) = Blade::from_indices(indices) {
            out.terms.insert(blade, crate::scalar::int(sign as i64));
        }
        Ok(out)
    }

    pub fn from_terms(dim: usize, grade: usize, terms: impl IntoIterator<Item = (Blade, Rational)>) -> Result<Self> {
        let mut out = Self::zero(dim, grade);
        for (b, c) in terms {
            if b.grade() != grade {
                return Err(Error::DegreeMismatch { expected: grade, found: b.grade() });
            }
            if b.span() > dim {
                return Err(Error::IndexOutOfRange { index: b.span() - 1, dim });
            }
            accumulate(&mut out.terms, b, c);
        }
        Ok(out)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        if self.grade != other.grade {
            return Err(Error::DegreeMismatch { expected: self.grade, found: other.grade });
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            accumulate(&mut out.terms, *b, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(b, c)| (*b, c * s)).collect();
        }
        out
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Exterior product `a ∧ b`.
pub fn wedge(a: &AltTensor, b: &AltTensor) -> Result<AltTensor> {
    check_dim(a.dim, b.dim)?;
    let grade = a.grade + b.grade;
    if grade > a.dim {
        return Err(Error::DegreeMismatch { expected: a.dim, found: grade });
    }
    let mut out = AltTensor::zero(a.dim, grade);
    for (ba, ca) in &a.terms {
        for (bb, cb) in &b.terms {
            if let Some((sign, blade)) = ba.wedge(*bb) {
                let c = ca * cb;
                accumulate(&mut out.terms, blade, if sign < 0 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Interior product `i_X ω`, contracting the first slot.
pub fn interior(x: &Vector, omega: &AltTensor) -> Result<AltTensor> {
    check_dim(x.dim(), omega.dim)?;
    if omega.grade == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = AltTensor::zero(omega.dim, omega.grade - 1);
    for (blade, c) in &omega.terms {
        for i in blade.indices() {
            let xi = x.get(i);
            if xi.is_zero() {
                continue;
            }
            let (sign, rest) = blade.contract(i).expect("index is in blade");
            let v = xi * c;
            accumulate(&mut out.terms, rest, if sign < 0 { -v } else { v });
        }
    }
    Ok(out)
}

/// Full contraction `⟨Λ, ω⟩` with `⟨e_I, ε^I⟩ = 1`.
pub fn pair(lambda: &AltTensor, omega: &AltTensor) -> Result<Rational> {
    check_dim(lambda.dim, omega.dim)?;
    if lambda.grade != omega.grade {
        return Err(Error::DegreeMismatch { expected: lambda.grade, found: omega.grade });
    }
    Ok(lambda.terms.iter().filter_map(|(b, c)| omega.terms.get(b).map(|d| c * d)).sum())
}

/// `X ∧ i_ζ Λ`: the sum over slots of `Λ` with `X` substituted into slot `b`,
/// weighted by `⟨X_b, ζ⟩`. Grade 0 gives the zero tensor.
pub fn alt_substitute(x: &Vector, zeta: &Covector, lambda: &AltTensor) -> Result<AltTensor> {
    check_dim(x.dim(), lambda.dim)?;
    if lambda.grade == 0 {
        return Ok(AltTensor::zero(lambda.dim, 0));
    }
    wedge(&x.to_alt(), &interior(zeta, lambda)?)
}
