//! JSON interchange format for polynomials.
//!
//! ```json
//! {"n_vars": 2, "terms": [{"c": "1", "e": [2, 0]}, {"c": "-3", "e": [0, 2]}]}
//! ```
//!
//! Coefficients are decimal strings of any length and are reduced modulo p
//! on load. Emitted documents list terms in descending grevlex order with
//! canonical residues, so emission is deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub n_vars: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(PolyDoc),
    Many(Vec<PolyDoc>),
}

impl PolyDoc {
    pub fn from_poly(p: &Poly) -> Self {
        PolyDoc {
            n_vars: p.n_vars(),
            terms: p
                .terms()
                .map(|(m, c)| TermDoc {
                    c: c.to_string(),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self, field: PrimeField) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.e.len() != self.n_vars {
                return Err(Error::Parse(format!(
                    "exponent list {:?} has length {}, expected {}",
                    t.e,
                    t.e.len(),
                    self.n_vars
                )));
            }
            terms.push((Monomial::new(t.e.clone()), field.parse_decimal(&t.c)?));
        }
        Ok(Poly::from_terms(field, self.n_vars, terms))
    }
}

pub fn parse_poly(field: PrimeField, text: &str) -> Result<Poly> {
    let doc: PolyDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_poly(field)
}

/// Reads either one polynomial document or a JSON array of them. All
/// polynomials must share the same number of variables.
pub fn parse_polys(field: PrimeField, text: &str) -> Result<Vec<Poly>> {
    let docs = match serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))? {
        OneOrMany::One(d) => vec![d],
        OneOrMany::Many(ds) => ds,
    };
    let polys = docs
        .iter()
        .map(|d| d.to_poly(field))
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = polys.first() {
        if let Some(bad) = polys.iter().find(|p| p.n_vars() != first.n_vars()) {
            return Err(Error::DimensionMismatch {
                expected: first.n_vars(),
                found: bad.n_vars(),
            });
        }
    }
    Ok(polys)
}

pub fn emit_poly(p: &Poly) -> String {
    serde_json::to_string(&PolyDoc::from_poly(p)).expect("documents always serialize")
}

pub fn emit_polys(ps: &[Poly]) -> String {
    let docs: Vec<PolyDoc> = ps.iter().map(PolyDoc::from_poly).collect();
    serde_json::to_string(&docs).expect("documents always serialize")
}
