//! The certificate interchange format.
//!
//! ```json
//! {
//!   "n": 3,
//!   "case": "ggr",
//!   "terms": [ {"k": 1, "s": 1, "coeff": "-3/4"}, ... ],
//!   "generator_convention": "t^(-s*k)*(t^s-1)^n",
//!   "target": "r_n"
//! }
//! ```
//!
//! Coefficients are lowest-terms fraction strings and terms are sorted by
//! `(s, k)`. Parsing is strict: anything the writer would not produce is
//! rejected with the name of the offending field.

use super::{CaseTag, CertTerm, Certificate};
use crate::rational::{parse_fraction, to_fraction_string};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub const GENERATOR_CONVENTION: &str = "t^(-s*k)*(t^s-1)^n";
pub const TARGET: &str = "r_n";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field}: {reason}")]
pub struct FormatError {
    pub field: String,
    pub reason: String,
}

impl FormatError {
    fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self { field: field.into(), reason: reason.into() }
    }
}

const FIELDS: [&str; 5] = ["n", "case", "terms", "generator_convention", "target"];

#[derive(Serialize)]
struct CertificateDoc {
    n: u32,
    case: String,
    terms: Vec<TermDoc>,
    generator_convention: String,
    target: String,
}

#[derive(Serialize)]
struct TermDoc {
    k: i64,
    s: u64,
    coeff: String,
}

fn term_doc(i: usize, value: &Value) -> Result<TermDoc, FormatError> {
    let obj = value.as_object().ok_or_else(|| FormatError::new(format!("terms[{i}]"), "expected an object"))?;
    for key in obj.keys() {
        if !["k", "s", "coeff"].contains(&key.as_str()) {
            return Err(FormatError::new(format!("terms[{i}].{key}"), "unknown field"));
        }
    }
    let get = |name: &str| obj.get(name).ok_or_else(|| FormatError::new(format!("terms[{i}].{name}"), "missing field"));
    let k = get("k")?.as_i64().ok_or_else(|| FormatError::new(format!("terms[{i}].k"), "expected an integer"))?;
    let s =
        get("s")?.as_u64().ok_or_else(|| FormatError::new(format!("terms[{i}].s"), "expected a positive integer"))?;
    let coeff = get("coeff")?
        .as_str()
        .ok_or_else(|| FormatError::new(format!("terms[{i}].coeff"), "expected a fraction string"))?
        .to_string();
    Ok(TermDoc { k, s, coeff })
}

impl Certificate {
    /// Pretty-printed JSON with a trailing newline; byte-stable for equal
    /// certificates.
    pub fn to_json(&self) -> String {
        let doc = CertificateDoc {
            n: self.n,
            case: self.case.as_str().to_string(),
            terms: self.terms.iter().map(|t| TermDoc { k: t.k, s: t.s, coeff: to_fraction_string(&t.coeff) }).collect(),
            generator_convention: GENERATOR_CONVENTION.to_string(),
            target: TARGET.to_string(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("certificate serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let value: Value = serde_json::from_str(text).map_err(|e| FormatError::new("document", e.to_string()))?;
        let doc = value.as_object().ok_or_else(|| FormatError::new("document", "expected a JSON object"))?;
        for key in doc.keys() {
            if !FIELDS.contains(&key.as_str()) {
                return Err(FormatError::new(key.clone(), "unknown field"));
            }
        }
        let field = |name: &str| doc.get(name).ok_or_else(|| FormatError::new(name, "missing field"));
        let n = field("n")?
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| FormatError::new("n", "expected a nonnegative integer"))?;
        let case_text = field("case")?.as_str().ok_or_else(|| FormatError::new("case", "expected a string"))?;
        let convention = field("generator_convention")?
            .as_str()
            .ok_or_else(|| FormatError::new("generator_convention", "expected a string"))?;
        let target = field("target")?.as_str().ok_or_else(|| FormatError::new("target", "expected a string"))?;
        let raw_terms = field("terms")?.as_array().ok_or_else(|| FormatError::new("terms", "expected an array"))?;
        let raw_terms: Vec<TermDoc> =
            raw_terms.iter().enumerate().map(|(i, t)| term_doc(i, t)).collect::<Result<_, _>>()?;
        let case: CaseTag = case_text.parse().map_err(|e: String| FormatError::new("case", e))?;
        if convention != GENERATOR_CONVENTION {
            return Err(FormatError::new(
                "generator_convention",
                format!("expected {GENERATOR_CONVENTION:?}, got {convention:?}"),
            ));
        }
        if target != TARGET {
            return Err(FormatError::new("target", format!("expected {TARGET:?}, got {target:?}")));
        }
        let mut terms = Vec::with_capacity(raw_terms.len());
        for (i, t) in raw_terms.iter().enumerate() {
            if t.s == 0 {
                return Err(FormatError::new(format!("terms[{i}].s"), "must be at least 1"));
            }
            let coeff = parse_fraction(&t.coeff).ok_or_else(|| {
                FormatError::new(format!("terms[{i}].coeff"), format!("{:?} is not a lowest-terms fraction", t.coeff))
            })?;
            if num_traits::Zero::is_zero(&coeff) {
                return Err(FormatError::new(format!("terms[{i}].coeff"), "zero coefficient"));
            }
            terms.push(CertTerm { k: t.k, s: t.s, coeff });
        }
        for (i, w) in terms.windows(2).enumerate() {
            if (w[0].s, w[0].k) >= (w[1].s, w[1].k) {
                return Err(FormatError::new(
                    format!("terms[{}]", i + 1),
                    "terms must be strictly sorted by (s, k) with no repeats",
                ));
            }
        }
        Certificate::new(n, case, terms).map_err(|e| FormatError::new("terms", e.to_string()))
    }
}
