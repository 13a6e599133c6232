use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Strictly increasing index tuple `I = (i₁ < … < iₚ)`, stored as a bit set.
///
/// Indices are 0-based internally. The order is by grade, then
/// lexicographic on the tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_bits(bits: u32) -> Self {
        Blade(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn single(i: usize) -> Self {
        Blade(1 << i)
    }

    /// Builds `e_{i₁} ∧ … ∧ e_{iₚ}` from an arbitrary index list, returning
    /// the sign of the sorting permutation, or `None` on a repeated index.
    pub fn from_indices(indices: &[usize]) -> Option<(i32, Blade)> {
        let mut sign = 1;
        let mut bits = 0u32;
        for &i in indices {
            if i >= 32 || bits & (1 << i) != 0 {
                return None;
            }
            // moving e_i past the already placed larger indices
            if (bits >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= 1 << i;
        }
        Some((sign, Blade(bits)))
    }

    pub fn from_sorted(indices: &[usize], dim: usize) -> Result<Self> {
        let mut bits = 0u32;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if last.is_some_and(|l| l >= i) {
                return Err(Error::InvalidParameters(format!("index tuple {indices:?} is not strictly increasing")));
            }
            last = Some(i);
            bits |= 1 << i;
        }
        Ok(Blade(bits))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Highest index plus one; zero for the empty blade.
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// `e_I ∧ e_J = sign · e_{I∪J}`.
    pub fn wedge(self, other: Blade) -> Option<(i32, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i ∈ I, j ∈ J) with i > j
        let mut inversions = 0;
        for j in other.indices() {
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }

    /// First-slot contraction with the dual basis element: `i_{εⁱ} e_I`.
    pub fn contract(self, i: usize) -> Option<(i32, Blade)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u32 << i) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Blade(self.0 & !(1 << i))))
    }

    /// Every blade of the given grade in `{0..dim}`, in canonical order.
    pub fn all_of_grade(dim: usize, grade: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> =
            (0u32..(1u32 << dim)).filter(|b| b.count_ones() as usize == grade).map(Blade).collect();
        out.sort();
        out
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the smallest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        assert_eq!(Blade::from_indices(&[1, 0]), Some((-1, Blade(0b11))));
        assert_eq!(Blade::from_indices(&[0, 1]), Some((1, Blade(0b11))));
        assert_eq!(Blade::from_indices(&[2, 0, 1]), Some((1, Blade(0b111))));
        assert_eq!(Blade::from_indices(&[1, 1]), None);
    }

    #[test]
    fn wedge_and_contract_signs() {
        let e1 = Blade::single(0);
        let e2 = Blade::single(1);
        assert_eq!(e2.wedge(e1), Some((-1, Blade(0b11))));
        let e12 = Blade(0b11);
        assert_eq!(e12.contract(0), Some((1, e2)));
        assert_eq!(e12.contract(1), Some((-1, e1)));
        assert_eq!(e12.contract(2), None);
    }

    #[test]
    fn lexicographic_within_grade() {
        let a = Blade::from_sorted(&[0, 3], 4).unwrap();
        let b = Blade::from_sorted(&[1, 2], 4).unwrap();
        assert!(a < b);
        assert!(Blade::single(3) < a);
        let all = Blade::all_of_grade(4, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].to_vec(), vec![0, 1]);
        assert_eq!(all[5].to_vec(), vec![2, 3]);
    }
}
