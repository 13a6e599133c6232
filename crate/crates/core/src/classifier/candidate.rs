//! Local operators `𝒟ₚᵏ → 𝒟_qˡ` with polynomial coefficients, written in the
//! coefficient basis: `(T D)_{α′,J}(x) = Σ t · x^γ ∂^β D_{α,I}(x)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{accumulate, from_bigint, one, parse_fraction, to_fraction_string, Rational};
use crate::symbol::json::{blade_from_json, blade_to_json, multi_index_from_json};
use crate::symbol::{lie_op, OpSymbol, PolyVectorField, SymbolKey};
use crate::tensor::{Blade, MultiIndex, MAX_DIM};

/// Parameters `(m, p, q, k, ℓ)` of a space of operators `𝒟ₚᵏ → 𝒟_qˡ` on `ℝᵐ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub l: usize,
}

impl Cell {
    pub fn new(m: usize, p: usize, q: usize, k: usize, l: usize) -> Result<Self> {
        if m == 0 || m > MAX_DIM {
            return Err(Error::UnsupportedDimension(m));
        }
        if p > m || q > m {
            return Err(Error::InvalidParameters(format!("form degrees p={p}, q={q} must not exceed m={m}")));
        }
        Ok(Self { m, p, q, k, l })
    }

    /// Outside `m ≥ min(p+2, q+3)` and `m ≥ max(p, q)` results are computed
    /// but not compared against known values.
    pub fn borderline(&self) -> bool {
        self.m < (self.p + 2).min(self.q + 3) || self.m < self.p.max(self.q)
    }

    /// Basis `ξ^α ⊗ e_I` of the input symbols, `|α| ≤ k`, `|I| = p`.
    pub fn inputs(&self) -> Vec<TensorIndex> {
        tensor_indices(self.m, self.k, self.p)
    }

    pub fn outputs(&self) -> Vec<TensorIndex> {
        tensor_indices(self.m, self.l, self.q)
    }
}

fn tensor_indices(m: usize, order: usize, grade: usize) -> Vec<TensorIndex> {
    let mut out: Vec<TensorIndex> = MultiIndex::up_to_degree(m, order)
        .into_iter()
        .flat_map(|alpha| Blade::all_of_grade(m, grade).into_iter().map(move |blade| TensorIndex { alpha, blade }))
        .collect();
    out.sort();
    out
}

/// A basis element `ξ^α ⊗ e_I` of symbol coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorIndex {
    pub alpha: MultiIndex,
    pub blade: Blade,
}

impl Ord for TensorIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha.graded_cmp(&other.alpha).then(self.blade.cmp(&other.blade))
    }
}

impl PartialOrd for TensorIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TensorIndex {
    /// Torus weight `α + 1_I` of the slot.
    pub(crate) fn weight(&self) -> Vec<i32> {
        (0..self.alpha.len()).map(|i| self.alpha.get(i) as i32 + self.blade.contains(i) as i32).collect()
    }
}

/// One coordinate of a candidate: `x^γ ∂^β` applied to input slot `input`,
/// landing in output slot `output`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColumnKey {
    pub gamma: MultiIndex,
    pub beta: MultiIndex,
    pub input: TensorIndex,
    pub output: TensorIndex,
}

impl Ord for ColumnKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gamma
            .graded_cmp(&other.gamma)
            .then_with(|| self.beta.graded_cmp(&other.beta))
            .then_with(|| self.input.cmp(&other.input))
            .then_with(|| self.output.cmp(&other.output))
    }
}

impl PartialOrd for ColumnKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every coordinate with `|γ| ≤ x_deg`, `|β| ≤ r_bound`.
pub fn all_columns(cell: &Cell, r_bound: usize, x_deg: usize) -> Vec<ColumnKey> {
    let (ins, outs) = (cell.inputs(), cell.outputs());
    let mut cols = Vec::new();
    for gamma in MultiIndex::up_to_degree(cell.m, x_deg) {
        for beta in MultiIndex::up_to_degree(cell.m, r_bound) {
            for input in &ins {
                for output in &outs {
                    cols.push(ColumnKey { gamma, beta, input: *input, output: *output });
                }
            }
        }
    }
    cols.sort();
    cols
}

/// Coordinates of torus weight zero: `β = γ + α + 1_I − α′ − 1_J`.
///
/// Equivariance under the diagonal fields `xⁱ∂ᵢ` forces every solution into
/// their span, so this is the working space of the solver.
pub fn weight_zero_columns(cell: &Cell, r_bound: usize, x_deg: usize) -> Vec<ColumnKey> {
    let (ins, outs) = (cell.inputs(), cell.outputs());
    let mut cols = Vec::new();
    for gamma in MultiIndex::up_to_degree(cell.m, x_deg) {
        for input in &ins {
            let w_in = input.weight();
            for output in &outs {
                let w_out = output.weight();
                let beta: Vec<i32> = (0..cell.m).map(|i| gamma.get(i) as i32 + w_in[i] - w_out[i]).collect();
                if beta.iter().any(|&b| b < 0) || beta.iter().sum::<i32>() as usize > r_bound {
                    continue;
                }
                let beta = MultiIndex::from_slice(&beta.iter().map(|&b| b as u32).collect::<Vec<_>>())
                    .expect("small exponents");
                cols.push(ColumnKey { gamma, beta, input: *input, output: *output });
            }
        }
    }
    cols.sort();
    cols
}

/// A local operator `T: 𝒟ₚᵏ → 𝒟_qˡ` of coefficient degree `≤ x_deg` reading
/// jets of order `≤ R` of its argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOperator {
    cell: Cell,
    r_bound: usize,
    x_deg: usize,
    terms: BTreeMap<ColumnKey, Rational>,
}

impl CandidateOperator {
    pub fn zero(cell: Cell, r_bound: usize, x_deg: usize) -> Self {
        Self { cell, r_bound, x_deg, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        cell: Cell,
        r_bound: usize,
        x_deg: usize,
        terms: impl IntoIterator<Item = (ColumnKey, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(cell, r_bound, x_deg);
        for (key, c) in terms {
            out.insert(key, c)?;
        }
        Ok(out)
    }

    pub fn cell(&self) -> Cell {
        self.cell
    }

    pub fn r_bound(&self) -> usize {
        self.r_bound
    }

    pub fn x_deg(&self) -> usize {
        self.x_deg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ColumnKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &ColumnKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, key: ColumnKey, c: Rational) -> Result<()> {
        let c_ = &self.cell;
        let shape_ok = key.gamma.len() == c_.m
            && key.beta.len() == c_.m
            && key.input.alpha.len() == c_.m
            && key.output.alpha.len() == c_.m
            && key.input.alpha.degree() <= c_.k
            && key.input.blade.grade() == c_.p
            && key.input.blade.span() <= c_.m
            && key.output.alpha.degree() <= c_.l
            && key.output.blade.grade() == c_.q
            && key.output.blade.span() <= c_.m;
        if !shape_ok {
            return Err(Error::InvalidParameters(format!("coordinate {key:?} does not fit cell {:?}", self.cell)));
        }
        if key.beta.degree() > self.r_bound {
            return Err(Error::OrderExceeded { bound: self.r_bound, found: key.beta.degree() });
        }
        if key.gamma.degree() > self.x_deg {
            return Err(Error::DegreeMismatch { expected: self.x_deg, found: key.gamma.degree() });
        }
        accumulate(&mut self.terms, key, c);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.r_bound = out.r_bound.max(other.r_bound);
        out.x_deg = out.x_deg.max(other.x_deg);
        for (k, c) in &other.terms {
            out.insert(*k, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.cell, self.r_bound, self.x_deg);
        for (k, c) in &self.terms {
            accumulate(&mut out.terms, *k, c * s);
        }
        out
    }

    /// Coordinates in the given column order.
    pub fn to_row(&self, columns: &BTreeMap<ColumnKey, usize>) -> Option<Vec<(usize, Rational)>> {
        let mut row: Vec<(usize, Rational)> =
            self.terms.iter().map(|(k, c)| columns.get(k).map(|&j| (j, c.clone()))).collect::<Option<_>>()?;
        row.sort_by_key(|(j, _)| *j);
        Some(row)
    }

    /// Scales so the first coefficient in column order is one.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Encodes a linear operator with constant coefficients by probing it on
    /// `x^β/β! ⊗ ξ^α e_I` and reading values at the origin.
    pub fn encode<F>(cell: Cell, r_bound: usize, mut op: F) -> Result<Self>
    where
        F: FnMut(&OpSymbol) -> Result<OpSymbol>,
    {
        let mut out = Self::zero(cell, r_bound, 0);
        let zero = MultiIndex::zero(cell.m);
        for input in cell.inputs() {
            for beta in MultiIndex::up_to_degree(cell.m, r_bound) {
                let mut d = OpSymbol::new(cell.m, cell.k, cell.p)?;
                let c = from_bigint(beta.factorial()).recip();
                d.insert(SymbolKey::new(beta, input.alpha, input.blade), c)?;
                let image = op(&d)?;
                check_shape(&image, cell.m, cell.l, cell.q)?;
                for (key, v) in image.terms().filter(|(k, _)| k.x == zero) {
                    let output = TensorIndex { alpha: key.xi, blade: key.blade };
                    out.insert(ColumnKey { gamma: zero, beta, input, output }, v.clone())?;
                }
            }
        }
        Ok(out)
    }
}

fn check_shape(d: &OpSymbol, m: usize, order: usize, grade: usize) -> Result<()> {
    if d.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: d.dim() });
    }
    if d.grade() != grade {
        return Err(Error::DegreeMismatch { expected: grade, found: d.grade() });
    }
    if let Some(found) = d.xi_degree() {
        if found > order {
            return Err(Error::OrderExceeded { bound: order, found });
        }
    }
    Ok(())
}

/// `T(D)`: each coordinate differentiates the matching coefficient of `D`.
pub fn apply_candidate(t: &CandidateOperator, d: &OpSymbol) -> Result<OpSymbol> {
    let cell = t.cell;
    check_shape(d, cell.m, cell.k, cell.p)?;
    let mut by_input: BTreeMap<TensorIndex, Vec<(&MultiIndex, &Rational)>> = BTreeMap::new();
    for (key, c) in d.terms() {
        by_input.entry(TensorIndex { alpha: key.xi, blade: key.blade }).or_default().push((&key.x, c));
    }
    let mut out = OpSymbol::new(cell.m, cell.l, cell.q)?;
    for (col, t_c) in &t.terms {
        let Some(coeffs) = by_input.get(&col.input) else { continue };
        for (mu, c) in coeffs {
            let Some(rest) = mu.checked_sub(&col.beta) else { continue };
            let v = t_c * *c * from_bigint(mu.falling(&col.beta));
            out.add_term(SymbolKey::new(rest.add(&col.gamma), col.output.alpha, col.output.blade), v);
        }
    }
    Ok(out)
}

/// `L_X(T D) − T(L_X D)`, with the action computed operationally.
pub fn equivariance_residual(t: &CandidateOperator, x: &PolyVectorField, d: &OpSymbol) -> Result<OpSymbol> {
    let d = d.with_order(t.cell.k)?;
    let lhs = lie_op(x, &apply_candidate(t, &d)?)?;
    let rhs = apply_candidate(t, &lie_op(x, &d)?)?;
    lhs.sub(&rhs)
}

/// Every single-coordinate operator with `|γ| ≤ x_deg`, `|β| ≤ R`.
pub fn candidate_space(cell: &Cell, r_bound: usize, x_deg: usize) -> Vec<CandidateOperator> {
    all_columns(cell, r_bound, x_deg)
        .into_iter()
        .map(|key| {
            let mut t = CandidateOperator::zero(*cell, r_bound, x_deg);
            t.terms.insert(key, one());
            t
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorIndexJson {
    pub alpha: Vec<u32>,
    #[serde(rename = "I")]
    pub blade: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateTermJson {
    pub gamma: Vec<u32>,
    pub beta: Vec<u32>,
    #[serde(rename = "in")]
    pub input: TensorIndexJson,
    #[serde(rename = "out")]
    pub output: TensorIndexJson,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateOperatorJson {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub l: usize,
    #[serde(rename = "R")]
    pub r_bound: usize,
    pub x_deg: usize,
    pub terms: Vec<CandidateTermJson>,
}

fn index_to_json(t: &TensorIndex) -> TensorIndexJson {
    TensorIndexJson { alpha: t.alpha.to_vec(), blade: blade_to_json(t.blade) }
}

fn index_from_json(j: &TensorIndexJson, m: usize) -> Result<TensorIndex> {
    Ok(TensorIndex { alpha: multi_index_from_json(&j.alpha, m)?, blade: blade_from_json(&j.blade, m)? })
}

impl From<&CandidateOperator> for CandidateOperatorJson {
    fn from(t: &CandidateOperator) -> Self {
        let Cell { m, p, q, k, l } = t.cell;
        Self {
            m,
            p,
            q,
            k,
            l,
            r_bound: t.r_bound,
            x_deg: t.x_deg,
            terms: t
                .terms
                .iter()
                .map(|(key, c)| CandidateTermJson {
                    gamma: key.gamma.to_vec(),
                    beta: key.beta.to_vec(),
                    input: index_to_json(&key.input),
                    output: index_to_json(&key.output),
                    coeff: to_fraction_string(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&CandidateOperatorJson> for CandidateOperator {
    type Error = Error;

    fn try_from(j: &CandidateOperatorJson) -> Result<Self> {
        let cell = Cell::new(j.m, j.p, j.q, j.k, j.l)?;
        let mut out = Self::zero(cell, j.r_bound, j.x_deg);
        for term in &j.terms {
            let key = ColumnKey {
                gamma: multi_index_from_json(&term.gamma, j.m)?,
                beta: multi_index_from_json(&term.beta, j.m)?,
                input: index_from_json(&term.input, j.m)?,
                output: index_from_json(&term.output, j.m)?,
            };
            out.insert(key, parse_fraction(&term.coeff)?)?;
        }
        Ok(out)
    }
}

impl CandidateOperator {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CandidateOperatorJson::from(self)).expect("candidate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: CandidateOperatorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalOp;
    use crate::scalar::int;
    use crate::symbol::dual_d;

    #[test]
    fn space_sizes() {
        let c = Cell::new(1, 0, 0, 0, 0).unwrap();
        assert_eq!(candidate_space(&c, 0, 0).len(), 1);
        let c = Cell::new(2, 1, 0, 0, 1).unwrap();
        assert_eq!(candidate_space(&c, 1, 0).len(), 18);
        assert!(Cell::new(2, 2, 3, 0, 0).is_err());
    }

    #[test]
    fn weight_zero_columns_are_a_subset() {
        let c = Cell::new(2, 1, 0, 1, 2).unwrap();
        let all = all_columns(&c, 3, 1);
        for col in weight_zero_columns(&c, 3, 1) {
            assert!(all.binary_search(&col).is_ok());
        }
    }

    #[test]
    fn encoded_dstar_matches_dual_d() {
        let c = Cell::new(2, 1, 0, 0, 1).unwrap();
        let t = CandidateOperator::encode(c, 1, dual_d).unwrap();
        let d = OpSymbol::monomial(2, 0, &[0, 0], &[0, 0], &[0], int(1)).unwrap();
        let expected = OpSymbol::monomial(2, 1, &[0, 0], &[1, 0], &[], int(1)).unwrap();
        assert_eq!(apply_candidate(&t, &d).unwrap(), expected);
        let d = OpSymbol::monomial(2, 0, &[2, 1], &[0, 0], &[1], int(3)).unwrap();
        assert_eq!(apply_candidate(&t, &d).unwrap(), dual_d(&d).unwrap());
    }

    #[test]
    fn identity_and_zero() {
        let c = Cell::new(2, 1, 1, 1, 1).unwrap();
        let id = CandidateOperator::encode(c, 2, |d| Ok(d.clone())).unwrap();
        let d = OpSymbol::monomial(2, 1, &[1, 2], &[0, 1], &[0], int(5)).unwrap();
        assert_eq!(apply_candidate(&id, &d).unwrap(), d);
        assert!(apply_candidate(&CandidateOperator::zero(c, 2, 0), &d).unwrap().is_zero());
        let x = PolyVectorField::monomial(2, &[1, 1], 0, int(1)).unwrap();
        assert!(equivariance_residual(&id, &x, &d).unwrap().is_zero());
    }

    #[test]
    fn residuals() {
        let c = Cell::new(2, 1, 0, 0, 1).unwrap();
        let t = CandidateOperator::encode(c, 1, |d| CanonicalOp::DStar.apply(d)).unwrap();
        for deg in 0..=3 {
            for x in PolyVectorField::monomials_of_degree(2, deg) {
                for i in 0..2 {
                    let d = OpSymbol::monomial(2, 0, &[1, 2], &[0, 0], &[i], int(1)).unwrap();
                    assert!(equivariance_residual(&t, &x, &d).unwrap().is_zero());
                }
            }
        }
        // picking out the coefficient of ω₂ is not equivariant under x¹∂₂
        let c = Cell::new(2, 1, 0, 0, 0).unwrap();
        let zero = MultiIndex::zero(2);
        let key = ColumnKey {
            gamma: zero,
            beta: zero,
            input: TensorIndex { alpha: zero, blade: Blade::single(1) },
            output: TensorIndex { alpha: zero, blade: Blade::EMPTY },
        };
        let t = CandidateOperator::from_terms(c, 0, 0, [(key, int(1))]).unwrap();
        let x = PolyVectorField::monomial(2, &[1, 0], 1, int(1)).unwrap();
        let d = OpSymbol::monomial(2, 0, &[0, 0], &[0, 0], &[0], int(1)).unwrap();
        assert!(!equivariance_residual(&t, &x, &d).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let c = Cell::new(2, 1, 0, 0, 1).unwrap();
        let t = CandidateOperator::encode(c, 1, dual_d).unwrap();
        let s = t.to_json();
        assert_eq!(CandidateOperator::from_json(&s).unwrap(), t);
        assert!(s.contains("\"in\":{\"alpha\":[0,0],\"I\":[1]}"));
    }
}
