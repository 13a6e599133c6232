use serde::{Deserialize, Serialize};

use super::candidate::{CandidateOperator, CandidateOperatorJson, Cell};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverPath {
    Direct,
    Ansatz,
}

impl std::fmt::Display for SolverPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverPath::Direct => "direct",
            SolverPath::Ansatz => "ansatz",
        })
    }
}

/// Truncation bounds a result was computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(rename = "R")]
    pub r_bound: usize,
    pub x_deg: usize,
    pub g: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub cell: Cell,
    pub dimension: usize,
    pub basis: Vec<CandidateOperator>,
    pub path: SolverPath,
    pub bounds: Bounds,
    pub stabilized: bool,
    pub borderline: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResultJson {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub l: usize,
    pub dimension: usize,
    pub basis: Vec<CandidateOperatorJson>,
    pub path: SolverPath,
    pub stabilized: bool,
    pub borderline: bool,
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&ClassificationResult> for ClassificationResultJson {
    fn from(r: &ClassificationResult) -> Self {
        let Cell { m, p, q, k, l } = r.cell;
        Self {
            m,
            p,
            q,
            k,
            l,
            dimension: r.dimension,
            basis: r.basis.iter().map(CandidateOperatorJson::from).collect(),
            path: r.path,
            stabilized: r.stabilized,
            borderline: r.borderline,
            bounds: r.bounds,
            notes: r.notes.clone(),
        }
    }
}

impl TryFrom<&ClassificationResultJson> for ClassificationResult {
    type Error = Error;

    fn try_from(j: &ClassificationResultJson) -> Result<Self> {
        Ok(Self {
            cell: Cell::new(j.m, j.p, j.q, j.k, j.l)?,
            dimension: j.dimension,
            basis: j.basis.iter().map(CandidateOperator::try_from).collect::<Result<_>>()?,
            path: j.path,
            bounds: j.bounds,
            stabilized: j.stabilized,
            borderline: j.borderline,
            notes: j.notes.clone(),
        })
    }
}

impl ClassificationResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ClassificationResultJson::from(self)).expect("result serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ClassificationResultJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(&j)
    }
}
