//! Canonical JSON shapes. Index tuples `I` are written 1-based, coefficients
//! as `num/den` strings.

use serde::{Deserialize, Serialize};

use super::field::{AltField, FormField};
use super::op::{OpSymbol, SymbolKey};
use crate::error::{Error, Result};
use crate::scalar::{parse_fraction, to_fraction_string};
use crate::tensor::{Blade, MultiIndex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTermJson {
    pub mu: Vec<u32>,
    pub alpha: Vec<u32>,
    #[serde(rename = "I")]
    pub blade: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSymbolJson {
    pub m: usize,
    pub k: usize,
    pub p: usize,
    pub terms: Vec<SymbolTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub mu: Vec<u32>,
    #[serde(rename = "I")]
    pub blade: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFieldJson {
    pub m: usize,
    pub p: usize,
    pub terms: Vec<FormTermJson>,
}

pub(crate) fn blade_to_json(b: Blade) -> Vec<usize> {
    b.indices().map(|i| i + 1).collect()
}

pub(crate) fn blade_from_json(indices: &[usize], dim: usize) -> Result<Blade> {
    if indices.contains(&0) {
        return Err(Error::Parse("index tuples are 1-based".into()));
    }
    let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
    Blade::from_sorted(&zero_based, dim)
}

pub(crate) fn multi_index_from_json(exps: &[u32], dim: usize) -> Result<MultiIndex> {
    if exps.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: exps.len() });
    }
    MultiIndex::from_slice(exps)
}

impl From<&OpSymbol> for OpSymbolJson {
    fn from(d: &OpSymbol) -> Self {
        Self {
            m: d.dim(),
            k: d.order(),
            p: d.grade(),
            terms: d
                .terms()
                .map(|(key, c)| SymbolTermJson {
                    mu: key.x.to_vec(),
                    alpha: key.xi.to_vec(),
                    blade: blade_to_json(key.blade),
                    coeff: to_fraction_string(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&OpSymbolJson> for OpSymbol {
    type Error = Error;

    fn try_from(j: &OpSymbolJson) -> Result<Self> {
        let mut out = OpSymbol::new(j.m, j.k, j.p)?;
        for t in &j.terms {
            let blade = blade_from_json(&t.blade, j.m)?;
            if blade.grade() != j.p {
                return Err(Error::DegreeMismatch { expected: j.p, found: blade.grade() });
            }
            let key = SymbolKey::new(multi_index_from_json(&t.mu, j.m)?, multi_index_from_json(&t.alpha, j.m)?, blade);
            out.insert(key, parse_fraction(&t.coeff)?)?;
        }
        Ok(out)
    }
}

impl From<&FormField> for FormFieldJson {
    fn from(w: &FormField) -> Self {
        Self {
            m: w.dim(),
            p: w.grade(),
            terms: w
                .terms()
                .map(|((x, b), c)| FormTermJson {
                    mu: x.to_vec(),
                    blade: blade_to_json(*b),
                    coeff: to_fraction_string(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&FormFieldJson> for FormField {
    type Error = Error;

    fn try_from(j: &FormFieldJson) -> Result<Self> {
        let mut out = AltField::new(j.m, j.p)?;
        for t in &j.terms {
            let blade = blade_from_json(&t.blade, j.m)?;
            if blade.grade() != j.p {
                return Err(Error::DegreeMismatch { expected: j.p, found: blade.grade() });
            }
            out.add_term(multi_index_from_json(&t.mu, j.m)?, blade, parse_fraction(&t.coeff)?);
        }
        Ok(out)
    }
}

impl OpSymbol {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&OpSymbolJson::from(self)).expect("symbol serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: OpSymbolJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        OpSymbol::try_from(&j)
    }
}

impl AltField {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FormFieldJson::from(self)).expect("form serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: FormFieldJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        AltField::try_from(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn golden_symbol_shape() {
        let d = OpSymbol::monomial(2, 1, &[1, 0], &[0, 1], &[1, 0], frac(3, 2)).unwrap();
        assert_eq!(d.to_json(), r#"{"m":2,"k":1,"p":2,"terms":[{"mu":[1,0],"alpha":[0,1],"I":[1,2],"coeff":"-3/2"}]}"#);
        assert_eq!(OpSymbol::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn rejects_malformed() {
        assert!(OpSymbol::from_json(
            r#"{"m":2,"k":0,"p":1,"terms":[{"mu":[0,0],"alpha":[1,0],"I":[1],"coeff":"1/1"}]}"#
        )
        .is_err());
        assert!(OpSymbol::from_json(
            r#"{"m":2,"k":1,"p":1,"terms":[{"mu":[0,0],"alpha":[1,0],"I":[0],"coeff":"1/1"}]}"#
        )
        .is_err());
        assert!(OpSymbol::from_json(r#"{"m":2,"k":1,"p":1,"terms":[{"mu":[0],"alpha":[1,0],"I":[1],"coeff":"1/1"}]}"#)
            .is_err());
    }

    #[test]
    fn form_round_trip() {
        let w = AltField::monomial(3, &[0, 2, 1], &[2, 0], frac(-1, 3)).unwrap();
        assert_eq!(AltField::from_json(&w.to_json()).unwrap(), w);
    }
}
