use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{MultiIndex, Vector};
use crate::scalar::{accumulate, from_bigint, Rational};

/// Sparse polynomial with exact coefficients.
///
/// Serves as `C^∞` stand-in for functions of `x`, and, read in the variable `ξ`,
/// as a symmetric tensor of `∨ℝᵐ` (polynomials on `(ℝᵐ)*`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

/// Symmetric contravariant tensors, identified with polynomials in `ξ`.
pub type SymTensor = Polynomial;

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn monomial(exps: MultiIndex, c: Rational) -> Self {
        let mut out = Self::zero(exps.len());
        accumulate(&mut out.terms, exps, c);
        out
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), crate::scalar::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            accumulate(&mut out.terms, e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn add_term(&mut self, e: MultiIndex, c: Rational) {
        accumulate(&mut self.terms, e, c);
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            accumulate(&mut self.terms, *e, c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, *e, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                accumulate(&mut out.terms, ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(self.nvars, crate::scalar::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `∂_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if let Some(lower) = e.decrement(i) {
                accumulate(&mut out.terms, lower, c * crate::scalar::int(e.get(i) as i64));
            }
        }
        out
    }

    /// `∂^β`.
    pub fn partial(&self, beta: &MultiIndex) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if let Some(rest) = e.checked_sub(beta) {
                accumulate(&mut out.terms, rest, c * from_bigint(e.falling(beta)));
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.degree() == d).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.exponents().iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }
}

/// `(ζ∂_ξ) P`, the derivation of `P` in the direction `ζ`.
pub fn directional_derivative(zeta: &Vector, p: &Polynomial) -> Polynomial {
    assert_eq!(zeta.dim(), p.nvars(), "direction and polynomial live in different dimensions");
    let mut out = Polynomial::zero(p.nvars());
    for (i, z) in zeta.components().iter().enumerate() {
        if !z.is_zero() {
            out.add_assign(&p.derivative(i).scale(z));
        }
    }
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
