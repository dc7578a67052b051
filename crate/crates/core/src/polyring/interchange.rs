//! JSON interchange documents for [`ExactPoly`].
//!
//! ```json
//! { "basis": "xy", "terms": [[2, 0, "1"], [0, 0, {"re": "3", "im": "1/2"}]] }
//! ```

use serde::{Deserialize, Serialize};

use super::gauss::{format_rational, parse_rational, GaussianRational};
use super::poly::{Basis, ExactPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoeffDoc {
    Real(String),
    Complex { re: String, im: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyDoc {
    pub basis: Basis,
    pub terms: Vec<(u32, u32, CoeffDoc)>,
}

impl CoeffDoc {
    pub fn from_coeff(c: &GaussianRational) -> Self {
        if c.is_real() {
            CoeffDoc::Real(format_rational(&c.re))
        } else {
            CoeffDoc::Complex { re: format_rational(&c.re), im: format_rational(&c.im) }
        }
    }

    pub fn to_coeff(&self) -> Result<GaussianRational> {
        match self {
            CoeffDoc::Real(s) => Ok(GaussianRational::real(parse_rational(s)?)),
            CoeffDoc::Complex { re, im } => Ok(GaussianRational::new(parse_rational(re)?, parse_rational(im)?)),
        }
    }
}

impl From<GaussianRational> for CoeffDoc {
    fn from(c: GaussianRational) -> Self {
        CoeffDoc::from_coeff(&c)
    }
}

impl TryFrom<CoeffDoc> for GaussianRational {
    type Error = Error;

    fn try_from(doc: CoeffDoc) -> Result<Self> {
        doc.to_coeff()
    }
}

impl From<&ExactPoly> for PolyDoc {
    fn from(p: &ExactPoly) -> Self {
        PolyDoc { basis: p.basis(), terms: p.terms().map(|(m, c)| (m.0, m.1, CoeffDoc::from_coeff(c))).collect() }
    }
}

impl TryFrom<&PolyDoc> for ExactPoly {
    type Error = Error;

    fn try_from(doc: &PolyDoc) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        let mut seen = std::collections::HashSet::new();
        for (i, j, c) in &doc.terms {
            if !seen.insert((*i, *j)) {
                return Err(Error::Format(format!("duplicate exponent pair [{i}, {j}]")));
            }
            terms.push((*i, *j, c.to_coeff()?));
        }
        Ok(ExactPoly::from_terms(doc.basis, terms))
    }
}

pub fn to_json(p: &ExactPoly) -> String {
    serde_json::to_string_pretty(&PolyDoc::from(p)).expect("poly documents always serialize")
}

pub fn from_json(s: &str) -> Result<ExactPoly> {
    let doc: PolyDoc = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    ExactPoly::try_from(&doc)
}

pub fn read_file(path: &std::path::Path) -> Result<ExactPoly> {
    from_json(&std::fs::read_to_string(path)?)
}
