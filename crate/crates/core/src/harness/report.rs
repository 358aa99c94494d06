use serde::{Deserialize, Serialize};

use super::{Params, Tolerance};
use crate::numerics::ComplexScalar;

/// JSON form of a complex value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Complex {
    im: f64,
    re: f64,
}

mod opt_complex {
    use super::{Complex, ComplexScalar};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<ComplexScalar>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|z| Complex { im: z.im, re: z.re }).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ComplexScalar>, D::Error> {
        Ok(Option::<Complex>::deserialize(d)?.map(|c| ComplexScalar::new(c.re, c.im)))
    }
}

/// One evaluated sample. Fields are declared in lexicographic order so the
/// serialized key order is stable and sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub abs_err: Option<f64>,
    pub id: String,
    #[serde(with = "opt_complex")]
    pub lhs: Option<ComplexScalar>,
    pub note: Option<String>,
    pub params: Params,
    pub pass: bool,
    pub rel_err: Option<f64>,
    #[serde(with = "opt_complex")]
    pub rhs: Option<ComplexScalar>,
}

impl CheckResult {
    pub fn compare(id: &str, params: Params, lhs: ComplexScalar, rhs: ComplexScalar, tol: Tolerance) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / lhs.norm().max(rhs.norm()).max(1e-300);
        CheckResult {
            abs_err: Some(abs_err),
            id: id.to_string(),
            lhs: Some(lhs),
            note: None,
            params,
            pass: tol.accepts(abs_err, rel_err),
            rel_err: Some(rel_err),
            rhs: Some(rhs),
        }
    }

    pub fn failed(id: &str, params: Params, note: String) -> Self {
        CheckResult {
            abs_err: None,
            id: id.to_string(),
            lhs: None,
            note: Some(note),
            params,
            pass: false,
            rel_err: None,
            rhs: None,
        }
    }
}

/// Outcome of a verification run. `wall_time_s` is only filled in on
/// request, so that reports of identical runs compare equal byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n_fail: usize,
    pub n_pass: usize,
    pub results: Vec<CheckResult>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn new(seed: u64, results: Vec<CheckResult>) -> Self {
        let n_pass = results.iter().filter(|r| r.pass).count();
        Report {
            n_fail: results.len() - n_pass,
            n_pass,
            results,
            seed,
            wall_time_s: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
