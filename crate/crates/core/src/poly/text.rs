//! Canonical text and JSON renderings. Both list terms in descending
//! graded-lex order; the text form is the equality key used for
//! classification and persistence.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Monomial, Polynomial, VarSpace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    /// Decimal string.
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl Polynomial {
    /// `c*name^e` terms joined by `" + "`, highest graded-lex term first.
    /// Coefficients are always printed; variables with exponent 0 are
    /// omitted; the zero polynomial is `"0"`.
    pub fn canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let names = self.space.names();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&c.to_string());
            for (name, &e) in names.iter().zip(&m.0) {
                if e != 0 {
                    out.push('*');
                    out.push_str(name);
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.space.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Polynomial> {
        let space = VarSpace::new(json.vars.iter().cloned());
        let mut p = Polynomial::zero(&space);
        for t in &json.terms {
            if t.exp.len() != space.len() {
                return Err(Error::Invalid("exponent vector length".into()));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient {:?}", t.coeff)))?;
            p.add_term(Monomial(t.exp.clone()), c);
        }
        Ok(p)
    }
}
