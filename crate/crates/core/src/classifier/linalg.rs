//! Exact sparse linear algebra over the rationals: echelon forms, rank, and
//! kernels with a canonical reduced basis.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// A sparse vector: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut out = Self::new(ncols);
        for r in rows {
            out.push(r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect());
        }
        out
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Appends a row; entries may be unsorted and contain repeats or zeros.
    pub fn push(&mut self, row: SparseRow) {
        let row = canonical_row(row);
        debug_assert!(row.last().is_none_or(|(j, _)| *j < self.ncols));
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![Rational::zero(); self.ncols];
                for (j, c) in r {
                    d[*j] = c.clone();
                }
                d
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.ncols);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    pub fn kernel(&self) -> Kernel {
        let mut ech = Echelon::new(self.ncols);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.kernel()
    }
}

fn canonical_row(row: SparseRow) -> SparseRow {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (j, c) in row {
        crate::scalar::accumulate(&mut acc, j, c);
    }
    acc.into_iter().collect()
}

/// `a + s·b` for sparse rows.
fn axpy(a: &SparseRow, s: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut SparseRow) {
    if let Some((_, lead)) = row.first() {
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, c) in row.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

fn entry(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(j, _)| *j).ok().map(|i| &row[i].1)
}

/// Incremental row echelon form with unit pivots. Duplicate rows (up to
/// scaling) are skipped before any elimination work.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
    seen: HashSet<SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, pivots: BTreeMap::new(), seen: HashSet::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ncols
    }

    /// Reduces `row` by the current pivots; returns `true` if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        normalize(&mut row);
        if row.is_empty() || !self.seen.insert(row.clone()) {
            return false;
        }
        loop {
            let Some((lead, c)) = row.first().cloned() else { return false };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-c, p),
                None => {
                    normalize(&mut row);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Reduced row echelon form: each pivot column is zero in every other row.
    pub fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut rows = self.pivots.clone();
        let cols: Vec<usize> = rows.keys().copied().collect();
        for &c in cols.iter().rev() {
            let p = rows[&c].clone();
            for &other in cols.iter().take_while(|&&o| o < c) {
                let r = rows.get_mut(&other).expect("pivot row");
                if let Some(v) = entry(r, c).cloned() {
                    *r = axpy(r, &-v, &p);
                }
            }
        }
        rows
    }

    pub fn kernel(&self) -> Kernel {
        let rref = self.reduced();
        let mut free_vectors = Vec::new();
        let mut by_free: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&c, row) in &rref {
            for (j, v) in row.iter().skip(1) {
                by_free.entry(*j).or_default().push((c, -v.clone()));
            }
        }
        for f in (0..self.ncols).filter(|f| !rref.contains_key(f)) {
            let mut v = by_free.remove(&f).unwrap_or_default();
            v.push((f, Rational::one()));
            v.sort_by_key(|(j, _)| *j);
            free_vectors.push(v);
        }
        Kernel { ncols: self.ncols, basis: rref_rows(free_vectors) }
    }
}

/// Canonical basis of the span of `rows`: reduced echelon form, pivots equal
/// to one, ordered by pivot column.
pub fn rref_rows(rows: Vec<SparseRow>) -> Vec<SparseRow> {
    let ncols = rows.iter().filter_map(|r| r.last().map(|(j, _)| j + 1)).max().unwrap_or(0);
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.reduced().into_values().collect()
}

/// Rank of the span of a list of sparse vectors.
pub fn span_rank(rows: &[SparseRow]) -> usize {
    let ncols = rows.iter().filter_map(|r| r.last().map(|(j, _)| j + 1)).max().unwrap_or(0);
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r.clone());
    }
    ech.rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub ncols: usize,
    pub basis: Vec<SparseRow>,
}

impl Kernel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn dense_basis(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|r| {
                let mut d = vec![Rational::zero(); self.ncols];
                for (j, c) in r {
                    d[*j] = c.clone();
                }
                d
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn small_kernels() {
        assert_eq!(dense(&[&[1, 0], &[0, 1]]).kernel().dimension(), 0);
        assert_eq!(SparseMatrix::new(4).kernel().dimension(), 4);
        let k = dense(&[&[1, 1, 0], &[0, 0, 1]]).kernel();
        assert_eq!(k.dense_basis(), vec![vec![int(1), int(-1), int(0)]]);
    }

    #[test]
    fn invertible_block_has_full_rank() {
        let m = dense(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.rank(), 3);
        let sing = dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(sing.rank(), 2);
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(entries in proptest::collection::vec(-3i64..4, 20)) {
            let rows: Vec<Vec<Rational>> = entries.chunks(5).map(|c| c.iter().map(|&v| int(v)).collect()).collect();
            let m = SparseMatrix::from_dense(&rows);
            let k = m.kernel();
            prop_assert_eq!(k.dimension() + m.rank(), 5);
            for v in k.dense_basis() {
                for r in &rows {
                    let s: Rational = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                    prop_assert!(s.is_zero());
                }
                let first = v.iter().find(|c| !c.is_zero()).unwrap();
                prop_assert!(first.is_one());
            }
        }
    }
}
