//! Constructors for the rings that come up most often.

use num_integer::Integer;

use super::spec::{BasisSpec, CoeffSpec, PeriodicitySpec, ProductSpec, RingSpec, TermSpec};
use super::GradedRing;
use crate::error::RingError;

fn term(coeff: i64, basis: &str, vpow: i64) -> TermSpec {
    TermSpec {
        coeff: CoeffSpec::Int(coeff),
        basis: basis.to_string(),
        vpow,
    }
}

fn power_name(e: usize) -> String {
    match e {
        0 => "one".into(),
        1 => "x".into(),
        _ => format!("x{e}"),
    }
}

/// `Z/m` (or `Q` for `m = 0`) in degree zero.
pub fn cyclic(m: u64) -> Result<GradedRing, RingError> {
    truncated(m, 1, 0, None)
}

/// `Z/m[x]/(x^k)` with `|x| = x_degree`, optionally with a central unit `v^{±1}` adjoined.
pub fn truncated(
    m: u64,
    k: usize,
    x_degree: i64,
    period: Option<(&str, i64)>,
) -> Result<GradedRing, RingError> {
    let d = period.map(|p| p.1);
    let basis: Vec<BasisSpec> = (0..k)
        .map(|e| {
            let deg = e as i64 * x_degree;
            BasisSpec {
                name: power_name(e),
                degree: d.map_or(deg, |d| deg.rem_euclid(d)),
                order: None,
            }
        })
        .collect();
    let mut products = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a + b < k {
                let vpow = d.map_or(0, |d| {
                    (basis[a].degree + basis[b].degree - basis[a + b].degree) / d
                });
                products.push(ProductSpec {
                    left: power_name(a),
                    right: power_name(b),
                    terms: vec![term(1, &power_name(a + b), vpow)],
                });
            }
        }
    }
    let spec = RingSpec {
        name: None,
        characteristic: m,
        basis,
        periodicity: period.map(|(u, d)| PeriodicitySpec {
            unit: u.into(),
            degree: d,
        }),
        products,
        unit: None,
    };
    GradedRing::from_spec(&spec)
}

/// Exterior algebra `k[x]/(x^2)`.
pub fn exterior(
    m: u64,
    x_degree: i64,
    period: Option<(&str, i64)>,
) -> Result<GradedRing, RingError> {
    truncated(m, 2, x_degree, period)
}

/// Direct product; the characteristic becomes the lcm of the factors'.
pub fn product(factors: &[GradedRing]) -> Result<GradedRing, RingError> {
    let first = factors
        .first()
        .ok_or_else(|| RingError::Unsupported("empty product".into()))?;
    let period = first.periodicity().cloned();
    if factors.iter().any(|f| f.periodicity() != period.as_ref()) {
        return Err(RingError::Unsupported(
            "factors must share their periodicity".into(),
        ));
    }
    let rational = first.coeffs().is_rational();
    if factors.iter().any(|f| f.coeffs().is_rational() != rational) {
        return Err(RingError::Unsupported(
            "cannot mix Q with finite coefficients".into(),
        ));
    }
    let m = factors.iter().fold(if rational { 0 } else { 1 }, |acc, f| {
        if rational {
            0
        } else {
            acc.lcm(&f.coeffs().modulus())
        }
    });
    let mut basis = Vec::new();
    let mut products = Vec::new();
    let mut unit = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let spec = f.to_spec();
        let rename = |s: &str| format!("{s}_{i}");
        for b in &spec.basis {
            let o = f
                .basis()
                .iter()
                .find(|x| x.name == b.name)
                .map(|x| x.order)
                .unwrap_or(0);
            basis.push(BasisSpec {
                name: rename(&b.name),
                degree: b.degree,
                order: (!rational && o != m).then_some(o),
            });
        }
        for p in spec.products {
            products.push(ProductSpec {
                left: rename(&p.left),
                right: rename(&p.right),
                terms: p
                    .terms
                    .into_iter()
                    .map(|t| TermSpec {
                        basis: rename(&t.basis),
                        ..t
                    })
                    .collect(),
            });
        }
        for t in spec.unit.unwrap_or_default() {
            unit.push(TermSpec {
                basis: rename(&t.basis),
                ..t
            });
        }
    }
    let spec = RingSpec {
        name: None,
        characteristic: m,
        basis,
        periodicity: period.map(|p| PeriodicitySpec {
            unit: p.unit,
            degree: p.degree,
        }),
        products,
        unit: Some(unit),
    };
    GradedRing::from_spec(&spec)
}
