//! Input files: a list of tropical polynomials in `vars` variables plus
//! optional sampling parameters.

use std::collections::BTreeSet;

use serde::de::{self, Deserializer};
use serde::Deserialize;
use serde_json::{json, Value};

use tropint::degree::SamplingBox;
use tropint::lattice::IntVector;
use tropint::polytope::{format_rational, parse_rational, Rational};
use tropint::tropical::TropicalPolynomial;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exp: Vec<i64>,
    #[serde(deserialize_with = "coefficient")]
    coef: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBox {
    half_width: i64,
    max_denominator: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    vars: usize,
    polynomials: Vec<RawPolynomial>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default, rename = "box")]
    sampling: Option<RawBox>,
}

fn coefficient<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(de::Error::custom)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub vars: usize,
    pub polynomials: Vec<TropicalPolynomial>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub sampling: Option<SamplingBox>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawSystem = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if raw.vars == 0 {
            return Err(CliError::Parse("vars must be positive".into()));
        }
        if raw.polynomials.is_empty() {
            return Err(CliError::Parse("at least one polynomial is required".into()));
        }
        let mut polynomials = Vec::with_capacity(raw.polynomials.len());
        for (i, p) in raw.polynomials.into_iter().enumerate() {
            if p.terms.is_empty() {
                return Err(CliError::Parse(format!("polynomial {i} has no terms")));
            }
            let mut seen = BTreeSet::new();
            let mut terms = Vec::with_capacity(p.terms.len());
            for (j, t) in p.terms.into_iter().enumerate() {
                if t.exp.len() != raw.vars {
                    return Err(CliError::Parse(format!(
                        "polynomial {i}, term {j}: exponent has length {}, expected {}",
                        t.exp.len(),
                        raw.vars
                    )));
                }
                if !seen.insert(t.exp.clone()) {
                    return Err(CliError::Parse(format!("polynomial {i}, term {j}: duplicate exponent {:?}", t.exp)));
                }
                terms.push((IntVector::from_i64s(&t.exp), t.coef));
            }
            polynomials.push(TropicalPolynomial::new(terms)?);
        }
        let sampling = match raw.sampling {
            Some(b) if b.half_width < 1 || b.max_denominator < 1 => {
                return Err(CliError::Parse("box parameters must be positive".into()));
            }
            Some(b) => Some(SamplingBox { half_width: b.half_width, max_denominator: b.max_denominator }),
            None => None,
        };
        if raw.samples == Some(0) {
            return Err(CliError::Parse("samples must be positive".into()));
        }
        Ok(SystemFile { vars: raw.vars, polynomials, seed: raw.seed, samples: raw.samples, sampling })
    }

    /// Canonical JSON: terms sorted by exponent, coefficients reduced.
    pub fn to_json(&self) -> Value {
        let polynomials: Vec<Value> = self
            .polynomials
            .iter()
            .map(|p| {
                let terms: Vec<Value> = p
                    .terms()
                    .iter()
                    .map(|t| {
                        let exp: Vec<i64> =
                            t.exponent.entries().iter().map(|e| i64::try_from(e).expect("parsed from i64")).collect();
                        json!({ "exp": exp, "coef": format_rational(&t.coefficient) })
                    })
                    .collect();
                json!({ "terms": terms })
            })
            .collect();
        let mut out = json!({ "vars": self.vars, "polynomials": polynomials });
        if let Some(s) = self.seed {
            out["seed"] = json!(s);
        }
        if let Some(s) = self.samples {
            out["samples"] = json!(s);
        }
        if let Some(b) = &self.sampling {
            out["box"] = json!({ "half_width": b.half_width, "max_denominator": b.max_denominator });
        }
        out
    }

    pub fn polynomial(&self, index: usize) -> Result<&TropicalPolynomial, CliError> {
        self.polynomials.get(index).ok_or_else(|| {
            CliError::Arity(format!("polynomial index {index} out of range (file has {})", self.polynomials.len()))
        })
    }
}
