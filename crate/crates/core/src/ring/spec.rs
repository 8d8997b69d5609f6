//! On-disk ring description (JSON syntax).

use serde::{Deserialize, Serialize};

use crate::error::RingError;
use crate::scalar::{Coeffs, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub characteristic: u64,
    pub basis: Vec<BasisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodicity: Option<PeriodicitySpec>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
    /// Explicit unit element. When absent, a basis element named `one` of degree 0
    /// is taken as the unit (its products default to the identity), otherwise the
    /// unit is solved for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<TermSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: i64,
    /// Additive order of the generator; defaults to the characteristic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicitySpec {
    pub unit: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: CoeffSpec,
    pub basis: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub vpow: i64,
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

/// An integer, or a string `"a/b"` for rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Int(i64),
    Text(String),
}

impl CoeffSpec {
    pub fn from_scalar(s: &Scalar) -> Self {
        if s.is_integer() {
            CoeffSpec::Int(*s.numer())
        } else {
            CoeffSpec::Text(crate::scalar::format_scalar(s))
        }
    }

    pub fn to_scalar(&self, c: &Coeffs) -> Result<Scalar, RingError> {
        let raw = match self {
            CoeffSpec::Int(a) => Scalar::from_integer(*a),
            CoeffSpec::Text(t) => {
                parse_rational(t).ok_or_else(|| RingError::BadCoefficient(t.clone()))?
            }
        };
        c.reduce(raw)
            .ok_or_else(|| RingError::BadCoefficient(format!("{self:?}")))
    }
}

fn parse_rational(t: &str) -> Option<Scalar> {
    let t = t.trim();
    match t.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().ok()?;
            let b: i64 = b.trim().parse().ok()?;
            (b != 0).then(|| Scalar::new(a, b))
        }
        None => t.parse::<i64>().ok().map(Scalar::from_integer),
    }
}

impl RingSpec {
    pub fn from_json(text: &str) -> Result<Self, RingError> {
        serde_json::from_str(text)
            .map_err(|e| RingError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring specs always serialize")
    }
}

pub fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}
