//! Linear equivariance constraints on candidate coordinates.
//!
//! Each row is one coefficient of `L_X(T D) − T(L_X D)` for a generator `X`
//! and a monomial test symbol `D`, as a linear form in the coordinates of `T`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::candidate::{CandidateOperator, Cell, ColumnKey, TensorIndex};
use super::linalg::{Echelon, SparseMatrix, SparseRow};
use crate::scalar::{from_bigint, one, Rational};
use crate::symbol::{lie_symbolic, OpSymbol, PolyVectorField, SymbolKey};
use crate::tensor::MultiIndex;

/// Which residual coefficients become rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowMode {
    /// Every coefficient, for test symbols with `|μ| ≤ B+1`.
    Full,
    /// Only coefficients at `x = 0`, for test symbols of matching torus weight.
    /// Sufficient once all candidates have constant coefficients: the residual
    /// at any point is the residual at the origin of translated data.
    TranslationReduced,
}

/// Column bookkeeping shared by all stages.
pub(crate) struct Engine {
    pub cell: Cell,
    pub cols: Vec<ColumnKey>,
    by_input: HashMap<TensorIndex, Vec<usize>>,
}

impl Engine {
    pub fn new(cell: Cell, cols: Vec<ColumnKey>) -> Self {
        let mut by_input: HashMap<TensorIndex, Vec<usize>> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            by_input.entry(c.input).or_default().push(j);
        }
        Self { cell, cols, by_input }
    }

    fn single_apply(&self, col: &ColumnKey, key: &SymbolKey, c: &Rational) -> Option<(SymbolKey, Rational)> {
        let rest = key.x.checked_sub(&col.beta)?;
        let v = c * from_bigint(key.x.falling(&col.beta));
        Some((SymbolKey::new(rest.add(&col.gamma), col.output.alpha, col.output.blade), v))
    }

    /// Residual rows for one `(X, D)` pair, with raw column indices.
    fn block(&self, x: &PolyVectorField, d: &OpSymbol, active: &[bool], origin_only: bool) -> Vec<SparseRow> {
        let cell = &self.cell;
        let ld = lie_symbolic(x, d).expect("shapes agree");
        let mut rows: BTreeMap<SymbolKey, Vec<(usize, Rational)>> = BTreeMap::new();
        let zero = MultiIndex::zero(cell.m);
        let mut push = |key: SymbolKey, j: usize, v: Rational| {
            if !origin_only || key.x == zero {
                rows.entry(key).or_default().push((j, v));
            }
        };
        let (dkey, dc) = d.terms().next().map(|(k, c)| (*k, c.clone())).expect("monomial test symbol");
        let dtype = TensorIndex { alpha: dkey.xi, blade: dkey.blade };
        if let Some(js) = self.by_input.get(&dtype) {
            for &j in js.iter().filter(|&&j| active[j]) {
                let Some((key, v)) = self.single_apply(&self.cols[j], &dkey, &dc) else { continue };
                let mut td = OpSymbol::new(cell.m, cell.l, cell.q).expect("valid cell");
                td.insert(key, v).expect("within order");
                for (k, v) in lie_symbolic(x, &td).expect("shapes agree").terms() {
                    push(*k, j, v.clone());
                }
            }
        }
        for (lkey, lc) in ld.terms() {
            let ltype = TensorIndex { alpha: lkey.xi, blade: lkey.blade };
            let Some(js) = self.by_input.get(&ltype) else { continue };
            for &j in js.iter().filter(|&&j| active[j]) {
                if let Some((key, v)) = self.single_apply(&self.cols[j], lkey, lc) {
                    push(key, j, -v);
                }
            }
        }
        rows.into_values().collect()
    }

    /// Test symbols for generator `x` in the given mode.
    fn test_symbols(&self, x: &PolyVectorField, mode: RowMode, jet: usize) -> Vec<OpSymbol> {
        let cell = &self.cell;
        let mut keys: BTreeSet<SymbolKey> = BTreeSet::new();
        match mode {
            RowMode::Full => {
                for t in cell.inputs() {
                    for mu in MultiIndex::up_to_degree(cell.m, jet) {
                        keys.insert(SymbolKey::new(mu, t.alpha, t.blade));
                    }
                }
            }
            RowMode::TranslationReduced => {
                let (&(nu, i), _) = x.terms().next().expect("monomial generator");
                for t in cell.inputs() {
                    let wt = t.weight();
                    for o in cell.outputs() {
                        let wo = o.weight();
                        let mu: Vec<i32> =
                            (0..cell.m).map(|a| wt[a] - wo[a] - nu.get(a) as i32 + (a == i) as i32).collect();
                        if mu.iter().any(|&v| v < 0) || mu.iter().sum::<i32>() as usize > jet {
                            continue;
                        }
                        let mu = MultiIndex::from_slice(&mu.iter().map(|&v| v as u32).collect::<Vec<_>>())
                            .expect("small exponents");
                        keys.insert(SymbolKey::new(mu, t.alpha, t.blade));
                    }
                }
            }
        }
        keys.into_iter()
            .map(|key| {
                let mut d = OpSymbol::new(cell.m, cell.k, cell.p).expect("valid cell");
                d.insert(key, one()).expect("within order");
                d
            })
            .collect()
    }
}

/// A basis of candidates as sparse vectors over the engine's raw columns.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub vectors: Vec<SparseRow>,
}

impl Basis {
    pub fn identity(n: usize) -> Self {
        Self { vectors: (0..n).map(|j| vec![(j, one())]).collect() }
    }

    pub fn support(&self, ncols: usize) -> Vec<bool> {
        let mut s = vec![false; ncols];
        for v in &self.vectors {
            for (j, _) in v {
                s[*j] = true;
            }
        }
        s
    }

    fn inverse_map(&self, ncols: usize) -> Vec<Vec<(usize, Rational)>> {
        let mut inv = vec![Vec::new(); ncols];
        for (b, v) in self.vectors.iter().enumerate() {
            for (j, c) in v {
                inv[*j].push((b, c.clone()));
            }
        }
        inv
    }
}

fn compose(row: &SparseRow, inv: &[Vec<(usize, Rational)>]) -> SparseRow {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (j, c) in row {
        for (b, w) in &inv[*j] {
            crate::scalar::accumulate(&mut acc, *b, c * w);
        }
    }
    acc.into_iter().collect()
}

/// Options of one constraint stage.
pub(crate) struct Stage<'a> {
    pub generators: &'a [PolyVectorField],
    pub mode: RowMode,
}

const CHUNK: usize = 2048;

/// Restricts `basis` to the subspace satisfying all constraints of `stage`.
pub(crate) fn reduce(engine: &Engine, basis: &Basis, stage: &Stage<'_>) -> Basis {
    if basis.vectors.is_empty() {
        return basis.clone();
    }
    let ncols = engine.cols.len();
    let active = basis.support(ncols);
    let inv = basis.inverse_map(ncols);
    let jet = engine.cols.iter().zip(&active).filter(|(_, a)| **a).map(|(c, _)| c.beta.degree()).max().unwrap_or(0) + 1;
    let origin_only = stage.mode == RowMode::TranslationReduced;
    let tasks: Vec<(usize, OpSymbol)> = stage
        .generators
        .iter()
        .enumerate()
        .flat_map(|(gi, x)| engine.test_symbols(x, stage.mode, jet).into_iter().map(move |d| (gi, d)))
        .collect();
    let mut ech = Echelon::new(basis.vectors.len());
    for chunk in tasks.chunks(CHUNK) {
        let blocks: Vec<Vec<SparseRow>> = chunk
            .par_iter()
            .map(|(gi, d)| {
                engine
                    .block(&stage.generators[*gi], d, &active, origin_only)
                    .iter()
                    .map(|r| compose(r, &inv))
                    .filter(|r| !r.is_empty())
                    .collect()
            })
            .collect();
        for row in blocks.into_iter().flatten() {
            ech.insert(row);
        }
        if ech.is_full() {
            return Basis { vectors: Vec::new() };
        }
    }
    let kernel = ech.kernel();
    let vectors = kernel
        .basis
        .iter()
        .map(|k| {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (b, c) in k {
                for (j, w) in &basis.vectors[*b] {
                    crate::scalar::accumulate(&mut acc, *j, c * w);
                }
            }
            acc.into_iter().collect()
        })
        .collect();
    Basis { vectors }
}

/// The full constraint matrix of `basis` under `generators`: one column per
/// candidate, rows over all monomial test symbols with `|μ| ≤ max(g, B) + 1`,
/// where `g` is the top generator degree and `B` the top jet order read.
pub fn constraint_system(basis: &[CandidateOperator], generators: &[PolyVectorField]) -> SparseMatrix {
    let Some(first) = basis.first() else { return SparseMatrix::new(0) };
    let cell = first.cell();
    let cols: Vec<ColumnKey> =
        basis.iter().flat_map(|t| t.terms().map(|(k, _)| *k)).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<ColumnKey, usize> = cols.iter().enumerate().map(|(j, k)| (*k, j)).collect();
    let engine = Engine::new(cell, cols);
    let b = Basis { vectors: basis.iter().map(|t| t.to_row(&index).expect("own columns")).collect() };
    let active = b.support(engine.cols.len());
    let inv = b.inverse_map(engine.cols.len());
    let g = generators.iter().filter_map(PolyVectorField::degree).max().unwrap_or(0);
    let jet = engine.cols.iter().map(|c| c.beta.degree()).max().unwrap_or(0).max(g) + 1;
    let mut m = SparseMatrix::new(basis.len());
    for x in generators.iter().filter(|x| !x.is_zero()) {
        for d in engine.test_symbols(x, RowMode::Full, jet) {
            for row in engine.block(x, &d, &active, false) {
                m.push(compose(&row, &inv));
            }
        }
    }
    m
}

/// Monomial fields `x^μ ∂ᵢ` with `|μ| = degree`.
pub fn generators_of_degree(m: usize, degree: usize) -> Vec<PolyVectorField> {
    PolyVectorField::monomials_of_degree(m, degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::candidate::candidate_space;

    #[test]
    fn identity_has_no_constraints() {
        let cell = Cell::new(2, 1, 1, 1, 1).unwrap();
        let id = CandidateOperator::encode(cell, 1, |d| Ok(d.clone())).unwrap();
        let gens: Vec<_> = (0..=2).flat_map(|g| generators_of_degree(2, g)).collect();
        assert!(constraint_system(&[id], &gens).is_zero());
    }

    #[test]
    fn k_on_first_order_functions_is_one_dimensional() {
        let cell = Cell::new(2, 0, 1, 1, 0).unwrap();
        let basis = candidate_space(&cell, 1, 0);
        let gens: Vec<_> = (0..=2).flat_map(|g| generators_of_degree(2, g)).collect();
        assert_eq!(constraint_system(&basis, &gens).kernel().dimension(), 1);
    }
}
