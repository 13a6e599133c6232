use std::collections::BTreeMap;

use super::ansatz::{classify_ansatz, AnsatzOptions};
use super::candidate::{CandidateOperator, Cell, ColumnKey};
use super::direct::{classify_direct, DirectOptions};
use super::linalg::{span_rank, SparseRow};
use super::result::ClassificationResult;
use crate::error::Result;

fn rows(index: &BTreeMap<ColumnKey, usize>, ops: &[&CandidateOperator]) -> Vec<SparseRow> {
    ops.iter().map(|t| t.to_row(index).expect("indexed")).collect()
}

fn common_index(ops: &[&CandidateOperator]) -> BTreeMap<ColumnKey, usize> {
    let mut keys: Vec<ColumnKey> = ops.iter().flat_map(|t| t.terms().map(|(k, _)| *k)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().enumerate().map(|(j, k)| (k, j)).collect()
}

/// Rank of a family of candidates, compared coordinatewise.
pub fn rank_of(ops: &[CandidateOperator]) -> usize {
    let refs: Vec<&CandidateOperator> = ops.iter().collect();
    span_rank(&rows(&common_index(&refs), &refs))
}

/// Whether `t` is a linear combination of `basis`.
pub fn in_span(basis: &[CandidateOperator], t: &CandidateOperator) -> bool {
    let mut all: Vec<&CandidateOperator> = basis.iter().collect();
    let before = {
        let idx = common_index(&all);
        span_rank(&rows(&idx, &all))
    };
    all.push(t);
    let idx = common_index(&all);
    span_rank(&rows(&idx, &all)) == before
}

/// Equal spans, by `rank A = rank B = rank [A; B]`.
pub fn same_span(a: &[CandidateOperator], b: &[CandidateOperator]) -> bool {
    let ra = rank_of(a);
    let rb = rank_of(b);
    let joint: Vec<CandidateOperator> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of(&joint) == ra
}

#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub cell: Cell,
    pub direct: ClassificationResult,
    pub ansatz: ClassificationResult,
    pub agree: bool,
    pub differences: Vec<String>,
}

pub fn cross_validate(cell: Cell, direct: &DirectOptions, ansatz: &AnsatzOptions) -> Result<CrossValidation> {
    let d = classify_direct(cell, direct)?;
    let a = classify_ansatz(cell, ansatz)?;
    let mut differences = Vec::new();
    if d.dimension != a.dimension {
        differences.push(format!("dimension: direct {} vs ansatz {}", d.dimension, a.dimension));
    }
    if !same_span(&d.basis, &a.basis) {
        for (i, t) in d.basis.iter().enumerate().filter(|(_, t)| !in_span(&a.basis, t)) {
            differences.push(format!("direct basis element {i} not in ansatz span: {}", t.to_json()));
        }
        for (i, t) in a.basis.iter().enumerate().filter(|(_, t)| !in_span(&d.basis, t)) {
            differences.push(format!("ansatz basis element {i} not in direct span: {}", t.to_json()));
        }
    }
    Ok(CrossValidation { cell, agree: differences.is_empty(), direct: d, ansatz: a, differences })
}
