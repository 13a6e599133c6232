use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest number of variables a [`MultiIndex`] can carry.
pub const MAX_VARS: usize = 16;

/// Exponent vector `α = (α¹, …, αⁿ)`, standing for `∂^α` or for the monomial `x^α` / `ξ^α`.
///
/// Stored inline so that it is `Copy` and cheap to hash; the derived `Ord` is
/// plain lexicographic order on the exponents. Use [`MultiIndex::graded_cmp`]
/// when total degree should dominate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    len: u8,
    exps: [u8; MAX_VARS],
}

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "multi-index length {n} exceeds {MAX_VARS}");
        Self { len: n as u8, exps: [0; MAX_VARS] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut out = Self::zero(n);
        assert!(i < n, "unit index {i} out of range for length {n}");
        out.exps[i] = 1;
        out
    }

    pub fn from_slice(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidParameters(format!("multi-index of length {} exceeds {MAX_VARS}", exps.len())));
        }
        let mut out = Self::zero(exps.len());
        for (slot, &e) in out.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| Error::InvalidParameters(format!("exponent {e} too large")))?;
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len());
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps[..self.len()]
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.exponents().iter().map(|&e| e as u32).collect()
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> usize {
        self.exponents().iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.len() {
            out.exps[i] = self.exps[i].checked_add(other.exps[i]).expect("multi-index exponent overflow");
        }
        out
    }

    pub fn increment(&self, i: usize) -> Self {
        let mut out = *self;
        out.exps[i] = out.exps[i].checked_add(1).expect("multi-index exponent overflow");
        out
    }

    pub fn decrement(&self, i: usize) -> Option<Self> {
        let mut out = *self;
        out.exps[i] = out.exps[i].checked_sub(1)?;
        Some(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.len() {
            out.exps[i] = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(out)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.exponents().iter().zip(other.exponents()).all(|(a, b)| a <= b)
    }

    /// `α! = Π αᵢ!`.
    pub fn factorial(&self) -> BigInt {
        self.exponents().iter().fold(BigInt::one(), |acc, &e| acc * factorial(e as u32))
    }

    /// Multinomial-style binomial `C(α, β) = Π C(αᵢ, βᵢ)`; zero unless `β ≤ α`.
    pub fn binomial(&self, beta: &Self) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &b) in self.exponents().iter().zip(beta.exponents()) {
            if b > a {
                return BigInt::from(0);
            }
            acc *= binomial(a as u32, b as u32);
        }
        acc
    }

    /// `α!/(α−β)!`, the constant produced by `∂^β x^α`; zero unless `β ≤ α`.
    pub fn falling(&self, beta: &Self) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &b) in self.exponents().iter().zip(beta.exponents()) {
            if b > a {
                return BigInt::from(0);
            }
            for t in 0..b {
                acc *= BigInt::from(a - t);
            }
        }
        acc
    }

    /// All `β ≤ self`, in lexicographic order.
    pub fn divisors(&self) -> Vec<Self> {
        let mut out = vec![Self::zero(self.len())];
        for i in 0..self.len() {
            let mut next = Vec::with_capacity(out.len() * (self.exps[i] as usize + 1));
            for base in &out {
                for e in 0..=self.exps[i] {
                    let mut b = *base;
                    b.exps[i] = e;
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    /// Every multi-index of length `n` with total degree exactly `d`.
    pub fn of_degree(n: usize, d: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Self::zero(n);
        fn rec(i: usize, left: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(*cur);
                }
                return;
            }
            if i == n - 1 {
                cur.exps[i] = left as u8;
                out.push(*cur);
                cur.exps[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur.exps[i] = e as u8;
                rec(i + 1, left - e, cur, out);
            }
            cur.exps[i] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// Every multi-index of length `n` with total degree at most `d`, graded.
    pub fn up_to_degree(n: usize, d: usize) -> Vec<Self> {
        (0..=d).flat_map(|k| Self::of_degree(n, k)).collect()
    }

    /// Degree first, then lexicographic.
    pub fn graded_cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exponents().cmp(other.exponents()))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
