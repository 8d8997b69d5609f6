//! Deciding whether projective modules over a graded commutative ring admit a
//! triangulation with suspension `[n]`.

use serde_json::{json, Value};

use crate::error::RingError;
use crate::ring::{GradedRing, Ideal, RingElement};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    NotQuasiFrobenius,
    MaximalIdealNotPrincipal,
    SquareNonzero,
    AnnihilatorNotPrincipalEqual,
    MissingUnitDegree(i64),
    WrongCharacteristic,
    OddSuspensionCharacteristicClash,
    ResidueNotGradedField,
}

impl Reason {
    pub fn name(&self) -> &'static str {
        match self {
            Reason::NotQuasiFrobenius => "NotQuasiFrobenius",
            Reason::MaximalIdealNotPrincipal => "MaximalIdealNotPrincipal",
            Reason::SquareNonzero => "SquareNonzero",
            Reason::AnnihilatorNotPrincipalEqual => "AnnihilatorNotPrincipalEqual",
            Reason::MissingUnitDegree(_) => "MissingUnitDegree",
            Reason::WrongCharacteristic => "WrongCharacteristic",
            Reason::OddSuspensionCharacteristicClash => "OddSuspensionCharacteristicClash",
            Reason::ResidueNotGradedField => "ResidueNotGradedField",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalKind {
    GradedField,
    ExteriorAlgebra {
        x_degree: i64,
        unit_degree_found: i64,
    },
    TMod4,
    NotDelta(Reason),
}

impl LocalKind {
    pub fn name(&self) -> &'static str {
        match self {
            LocalKind::GradedField => "GradedField",
            LocalKind::ExteriorAlgebra { .. } => "ExteriorAlgebra",
            LocalKind::TMod4 => "TMod4",
            LocalKind::NotDelta(_) => "NotDelta",
        }
    }

    pub fn is_delta(&self) -> bool {
        !matches!(self, LocalKind::NotDelta(_))
    }

    pub fn reason(&self) -> Option<&Reason> {
        match self {
            LocalKind::NotDelta(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVerdict {
    pub kind: LocalKind,
    /// Generator of the maximal ideal when one was found.
    pub generator: Option<RingElement>,
    /// A unit in the degree the verdict depends on.
    pub unit: Option<RingElement>,
}

impl LocalVerdict {
    fn new(kind: LocalKind) -> Self {
        LocalVerdict {
            kind,
            generator: None,
            unit: None,
        }
    }
}

/// How much the verdict is backed by theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confidence {
    /// `n` is 0 or 1 and the classification is an equivalence.
    Decided,
    /// Only the local necessary conditions were tested. `parity_ok` is false when
    /// `n` and `|x|` are both even over a residue field of odd characteristic, the
    /// case where the explicit construction is not available.
    LocalCriteriaOnly { parity_ok: bool },
}

#[derive(Clone, Debug)]
pub struct FactorVerdict {
    pub ring: GradedRing,
    pub idempotent: RingElement,
    pub verdict: LocalVerdict,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub factors: Vec<FactorVerdict>,
    pub is_delta: bool,
    pub suspension: i64,
    pub confidence: Confidence,
}

fn measure_of_top(ring: &GradedRing, m: &Ideal) -> crate::linalg::Measure {
    Ideal::unit(ring).measure(ring).quotient(&m.measure(ring))
}

/// Classify a local ring for suspension `[n]`.
pub fn classify_local(ring: &GradedRing, n: i64) -> Result<LocalVerdict, RingError> {
    if !ring.is_local()? {
        return Err(RingError::NotLocal);
    }
    let m = ring.radical()?;
    if m.is_zero(ring) {
        return Ok(LocalVerdict::new(LocalKind::GradedField));
    }
    let k = ring.quotient(&m)?;
    if !k.is_local()? || !k.radical()?.is_zero(&k) {
        return Ok(LocalVerdict::new(LocalKind::NotDelta(
            Reason::ResidueNotGradedField,
        )));
    }
    let top = measure_of_top(ring, &m);
    if ring.socle()?.measure(ring) != top {
        return Ok(LocalVerdict::new(LocalKind::NotDelta(
            Reason::NotQuasiFrobenius,
        )));
    }
    let m2 = m.product(ring, &m);
    if m.measure(ring).quotient(&m2.measure(ring)) != top {
        return Ok(LocalVerdict::new(LocalKind::NotDelta(
            Reason::MaximalIdealNotPrincipal,
        )));
    }
    let Some(x) = m
        .all_generators(ring)
        .into_iter()
        .find(|g| !m2.contains(ring, g))
    else {
        return Ok(LocalVerdict::new(LocalKind::NotDelta(
            Reason::MaximalIdealNotPrincipal,
        )));
    };
    let principal = Ideal::generated(ring, std::slice::from_ref(&x));
    let fail = |reason| {
        Ok(LocalVerdict {
            kind: LocalKind::NotDelta(reason),
            generator: Some(x.clone()),
            unit: None,
        })
    };
    if !principal.same_as(&m) {
        return fail(Reason::MaximalIdealNotPrincipal);
    }
    if !ring.annihilator(&x).same_as(&principal) {
        return fail(Reason::AnnihilatorNotPrincipalEqual);
    }
    if !ring.is_zero(&ring.mul(&x, &x)) {
        return fail(Reason::SquareNonzero);
    }
    let char_r = ring.characteristic();
    let char_k = k.characteristic();
    if char_r == char_k {
        if n == 0 && char_k != 2 {
            return fail(Reason::WrongCharacteristic);
        }
        let needed = 3 * x.degree + n;
        return match ring.unit_in_degree(needed)? {
            Some(u) => Ok(LocalVerdict {
                kind: LocalKind::ExteriorAlgebra {
                    x_degree: x.degree,
                    unit_degree_found: needed,
                },
                generator: Some(x),
                unit: Some(u),
            }),
            None => fail(Reason::MissingUnitDegree(needed)),
        };
    }
    if n.rem_euclid(2) == 1 {
        return fail(Reason::OddSuspensionCharacteristicClash);
    }
    let two = ring.scale(&ring.coeffs().from_int(2), &ring.one());
    if char_r != 4 || !Ideal::generated(ring, &[two]).same_as(&m) {
        return fail(Reason::WrongCharacteristic);
    }
    match ring.unit_in_degree(n)? {
        Some(u) => Ok(LocalVerdict {
            kind: LocalKind::TMod4,
            generator: Some(x),
            unit: Some(u),
        }),
        None => fail(Reason::MissingUnitDegree(n)),
    }
}

/// Split into local factors and classify each.
pub fn classify(ring: &GradedRing, n: i64) -> Result<Verdict, RingError> {
    let mut factors = Vec::new();
    let mut parity_ok = true;
    for (factor, e) in ring.decompose_with_idempotents()? {
        let verdict = classify_local(&factor, n)?;
        if let (Some(x), false) = (
            &verdict.generator,
            factor.residue_field()?.characteristic() == 2,
        ) {
            if n.rem_euclid(2) == 0 && x.degree.rem_euclid(2) == 0 {
                parity_ok = false;
            }
        }
        factors.push(FactorVerdict {
            ring: factor,
            idempotent: e,
            verdict,
        });
    }
    let is_delta = factors.iter().all(|f| f.verdict.kind.is_delta());
    let confidence = if n == 0 || n == 1 {
        Confidence::Decided
    } else {
        Confidence::LocalCriteriaOnly { parity_ok }
    };
    Ok(Verdict {
        factors,
        is_delta,
        suspension: n,
        confidence,
    })
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| {
                let kind = &f.verdict.kind;
                let (x_degree, unit_degree) = match kind {
                    LocalKind::ExteriorAlgebra {
                        x_degree,
                        unit_degree_found,
                    } => (json!(x_degree), json!(unit_degree_found)),
                    _ => (Value::Null, Value::Null),
                };
                let needed = match kind.reason() {
                    Some(Reason::MissingUnitDegree(d)) => json!(d),
                    _ => Value::Null,
                };
                json!({
                    "ring": f.ring.to_string(),
                    "kind": kind.name(),
                    "reason": kind.reason().map(|r| r.name()),
                    "needed_unit_degree": needed,
                    "x_degree": x_degree,
                    "unit_degree_found": unit_degree,
                    "generator": f.verdict.generator.as_ref().map(|x| f.ring.format(x)),
                })
            })
            .collect();
        let confidence = match self.confidence {
            Confidence::Decided => json!("decided"),
            Confidence::LocalCriteriaOnly { parity_ok } => {
                json!({"local_criteria_only": true, "parity_ok": parity_ok})
            }
        };
        json!({
            "schema_version": SCHEMA_VERSION,
            "is_delta": self.is_delta,
            "suspension": self.suspension,
            "confidence": confidence,
            "factors": factors,
        })
    }
}
