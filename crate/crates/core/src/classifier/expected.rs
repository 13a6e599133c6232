//! Known dimensions of the spaces of equivariant operators.

use super::candidate::Cell;

/// Target order `ℓ` at which the operators of each target degree live:
/// `q = p−1, p−2 → k+1`, `q = p → k`, `q = p+1 → k−1`.
pub fn natural_order(p: usize, q: usize, k: usize) -> Option<usize> {
    match q as i64 - p as i64 {
        -2 | -1 => Some(k + 1),
        0 => Some(k),
        1 => k.checked_sub(1),
        _ => None,
    }
}

/// Known dimension for `ℓ` at or above the natural order; `None` where no
/// value is known. Borderline cells get a value too; callers decide whether
/// to compare.
pub fn expected_dimension(cell: &Cell) -> Option<usize> {
    let Cell { p, q, k, l, .. } = *cell;
    let natural = natural_order(p, q, k)?;
    if l < natural {
        return None;
    }
    let dim = match q as i64 - p as i64 {
        -2 => 0,
        -1 => 1,
        0 if p == 0 => {
            if k == 0 {
                1
            } else {
                2
            }
        }
        0 => {
            if k == 1 {
                2
            } else {
                1
            }
        }
        1 => usize::from(k == 1 || (k == 2 && p == 0)),
        _ => return None,
    };
    Some(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let e = |m, p, q, k, l| expected_dimension(&Cell::new(m, p, q, k, l).unwrap());
        assert_eq!(e(3, 1, 0, 1, 2), Some(1));
        assert_eq!(e(3, 0, 0, 2, 2), Some(2));
        assert_eq!(e(3, 1, 1, 1, 1), Some(2));
        assert_eq!(e(3, 1, 1, 2, 2), Some(1));
        assert_eq!(e(3, 0, 1, 2, 1), Some(1));
        assert_eq!(e(3, 1, 2, 2, 1), Some(0));
        assert_eq!(e(4, 2, 0, 1, 2), Some(0));
        assert_eq!(e(3, 1, 0, 1, 1), None);
        assert_eq!(e(3, 0, 2, 1, 1), None);
    }
}
