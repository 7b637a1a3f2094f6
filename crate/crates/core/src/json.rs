//! JSON interchange formats.
//!
//! ```text
//! element    {"n": 2, "r": 2, "terms": [{"coeff": "3/2", "entries": [[1, 3, 2]]}]}
//! hecke      [{"coeff": "1", "sigma": [2, 1], "eps": [0, 0]}]
//! poly       {"poly": {"-1": "2", "1": "1"}}
//! poly2      {"terms": [{"x1": 1, "x2": -1, "coeff": "1"}]}
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::cell::{pi1, pi2, CellTensor, CellVector, Membership, Side};
use crate::element::AlgebraElement;
use crate::error::{invalid, Result};
use crate::hecke::HeckeElement;
use crate::laurent::{LaurentPoly1, LaurentPoly2, Mono2};
use crate::matrix::PeriodicMatrix;
use crate::weyl::WeylElement;

pub fn parse_coeff(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| invalid(format!("bad coefficient {s:?}; expected p or p/q")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub entries: Vec<[i64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub n: u32,
    pub r: u32,
    pub terms: Vec<TermJson>,
}

pub fn matrix_entries(a: &PeriodicMatrix) -> Vec<[i64; 3]> {
    a.entries().iter().map(|e| [e.row, e.col, e.mult as i64]).collect()
}

pub fn matrix_from_entries(n: u32, entries: &[[i64; 3]]) -> Result<PeriodicMatrix> {
    for &[i, _, a] in entries {
        if i < 1 || i > n as i64 {
            return Err(invalid(format!("row index {i} outside 1..={n}")));
        }
        if a < 1 || a > u32::MAX as i64 {
            return Err(invalid(format!("entry multiplicity {a} must be a positive integer")));
        }
    }
    PeriodicMatrix::from_entries(n, entries.iter().map(|&[i, j, a]| (i, j, a as u32)))
}

impl From<&AlgebraElement> for ElementJson {
    fn from(x: &AlgebraElement) -> Self {
        Self {
            n: x.n(),
            r: x.r(),
            terms: x
                .terms()
                .map(|(a, c)| TermJson {
                    coeff: c.to_string(),
                    entries: matrix_entries(a),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementJson> for AlgebraElement {
    type Error = crate::error::Error;

    fn try_from(j: &ElementJson) -> Result<Self> {
        if j.n == 0 {
            return Err(invalid("period n must be positive"));
        }
        let mut terms = Vec::new();
        for t in &j.terms {
            let a = matrix_from_entries(j.n, &t.entries)?;
            if a.r() != j.r {
                return Err(invalid(format!("term {a} has weight {}, expected r = {}", a.r(), j.r)));
            }
            terms.push((a, parse_coeff(&t.coeff)?));
        }
        AlgebraElement::from_terms(j.n, j.r, terms)
    }
}

pub fn element_to_value(x: &AlgebraElement) -> serde_json::Value {
    serde_json::to_value(ElementJson::from(x)).expect("serializable")
}

pub fn element_from_value(v: serde_json::Value) -> Result<AlgebraElement> {
    let j: ElementJson = serde_json::from_value(v).map_err(|e| invalid(format!("element JSON: {e}")))?;
    AlgebraElement::try_from(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeTermJson {
    pub coeff: String,
    pub sigma: Vec<usize>,
    pub eps: Vec<i64>,
}

pub fn hecke_to_value(h: &HeckeElement) -> serde_json::Value {
    let terms: Vec<HeckeTermJson> = h
        .terms()
        .map(|(g, c)| HeckeTermJson {
            coeff: c.to_string(),
            sigma: g.sigma().iter().map(|s| s + 1).collect(),
            eps: g.eps().to_vec(),
        })
        .collect();
    serde_json::to_value(terms).expect("serializable")
}

pub fn hecke_from_value(v: serde_json::Value) -> Result<HeckeElement> {
    let terms: Vec<HeckeTermJson> = serde_json::from_value(v).map_err(|e| invalid(format!("Hecke JSON: {e}")))?;
    let mut out = Vec::new();
    for t in terms {
        if t.sigma.contains(&0) {
            return Err(invalid("sigma is 1-based"));
        }
        let g = WeylElement::new(t.sigma.iter().map(|s| s - 1).collect(), t.eps)?;
        out.push((g, parse_coeff(&t.coeff)?));
    }
    HeckeElement::from_terms(out)
}

pub fn poly1_to_value(p: &LaurentPoly1) -> serde_json::Value {
    let poly: BTreeMap<i64, String> = p.terms().map(|(k, c)| (*k, c.to_string())).collect();
    serde_json::json!({ "poly": poly })
}

pub fn poly1_from_value(v: serde_json::Value) -> Result<LaurentPoly1> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Poly {
        poly: BTreeMap<String, String>,
    }
    let p: Poly = serde_json::from_value(v).map_err(|e| invalid(format!("polynomial JSON: {e}")))?;
    let mut out = LaurentPoly1::zero();
    for (k, c) in p.poly {
        let k: i64 = k.trim().parse().map_err(|_| invalid(format!("bad exponent {k:?}")))?;
        out.add_term(k, parse_coeff(&c)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mono2Json {
    pub x1: u32,
    pub x2: i64,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Poly2Json {
    pub terms: Vec<Mono2Json>,
}

impl From<&LaurentPoly2> for Poly2Json {
    fn from(p: &LaurentPoly2) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(m, c)| Mono2Json {
                    x1: m.x1,
                    x2: m.x2,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&Poly2Json> for LaurentPoly2 {
    type Error = crate::error::Error;

    fn try_from(j: &Poly2Json) -> Result<Self> {
        let mut out = LaurentPoly2::zero();
        for t in &j.terms {
            out.add_term(Mono2::new(t.x1, t.x2), parse_coeff(&t.coeff)?);
        }
        Ok(out)
    }
}

pub fn poly2_to_value(p: &LaurentPoly2) -> serde_json::Value {
    serde_json::to_value(Poly2Json::from(p)).expect("serializable")
}

pub fn poly2_from_value(v: serde_json::Value) -> Result<LaurentPoly2> {
    let j: Poly2Json = serde_json::from_value(v).map_err(|e| invalid(format!("polynomial JSON: {e}")))?;
    LaurentPoly2::try_from(&j)
}

pub fn cell_vector_to_value(v: &CellVector) -> serde_json::Value {
    let (side, basis) = match v.side {
        Side::Left => ("left", pi1()),
        Side::Right => ("right", pi2()),
    };
    serde_json::json!({
        "side": side,
        "basis": basis.iter().map(matrix_entries).collect::<Vec<_>>(),
        "coords": v.coords.iter().map(poly2_to_value).collect::<Vec<_>>(),
    })
}

pub fn tensor_to_value(t: &CellTensor) -> serde_json::Value {
    let coords: Vec<Vec<serde_json::Value>> = t
        .coords
        .iter()
        .map(|row| row.iter().map(poly2_to_value).collect())
        .collect();
    serde_json::json!({ "coords": coords })
}

pub fn tensor_from_value(v: serde_json::Value) -> Result<CellTensor> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Tensor {
        coords: Vec<Vec<Poly2Json>>,
    }
    let j: Tensor = serde_json::from_value(v).map_err(|e| invalid(format!("tensor JSON: {e}")))?;
    if j.coords.len() != 4 || j.coords.iter().any(|r| r.len() != 4) {
        return Err(invalid("tensor coordinates must be 4 x 4"));
    }
    let mut t = CellTensor::zero();
    for (l, row) in j.coords.iter().enumerate() {
        for (m, p) in row.iter().enumerate() {
            t.coords[l][m] = LaurentPoly2::try_from(p)?;
        }
    }
    Ok(t)
}

pub fn membership_to_value(m: &Membership) -> serde_json::Value {
    match m {
        Membership::Member(t) => serde_json::json!({ "verdict": "member", "tensor": tensor_to_value(t) }),
        Membership::NotMember => serde_json::json!({ "verdict": "not-member" }),
        Membership::Undecided => serde_json::json!({ "verdict": "undecided" }),
    }
}
