use std::collections::BTreeMap;

use super::{GradedRing, RingElement};
use crate::linalg::{Measure, Span, Vector};

/// A homogeneous ideal, stored slice by slice.
///
/// Each slice span lives in the full coordinate space of the ring and always
/// contains the order relations, so containment is equality in `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<RingElement>,
    slices: BTreeMap<i64, Span>,
}

impl Ideal {
    pub fn zero(ring: &GradedRing) -> Self {
        Self::from_slices(ring, Vec::new(), |_| Vec::new())
    }

    pub fn unit(ring: &GradedRing) -> Self {
        Self::generated(ring, &[ring.one()])
    }

    /// The ideal generated by homogeneous elements.
    pub fn generated(ring: &GradedRing, gens: &[RingElement]) -> Self {
        Self::from_slices(ring, gens.to_vec(), |d| {
            let mut rows = Vec::new();
            for g in gens {
                rows.extend(ring.mult_images(g, d - g.degree));
            }
            rows
        })
    }

    /// Build an ideal from per-slice additive generators; the caller guarantees closure.
    pub(crate) fn from_slices(
        ring: &GradedRing,
        generators: Vec<RingElement>,
        mut rows: impl FnMut(i64) -> Vec<Vector>,
    ) -> Self {
        let zero = ring.zero_span();
        let slices = ring
            .slice_keys()
            .into_iter()
            .map(|d| (d, zero.with_rows(rows(d))))
            .collect();
        Ideal { generators, slices }
    }

    pub fn slice(&self, ring: &GradedRing, degree: i64) -> Span {
        match self.slices.get(&ring.slice_key(degree)) {
            Some(s) => s.clone(),
            None => ring.zero_span(),
        }
    }

    pub fn slices(&self) -> impl Iterator<Item = (i64, &Span)> {
        self.slices.iter().map(|(d, s)| (*d, s))
    }

    pub fn contains(&self, ring: &GradedRing, x: &RingElement) -> bool {
        self.slice(ring, x.degree).contains(&x.coeffs)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other
            .slices
            .iter()
            .all(|(d, s)| self.slices.get(d).is_some_and(|t| t.contains_span(s)))
    }

    /// Equality as subsets of `R` (generators are ignored).
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.slices == other.slices
    }

    pub fn is_zero(&self, ring: &GradedRing) -> bool {
        let zero = ring.zero_span();
        self.slices.values().all(|s| *s == zero)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let slices = self
            .slices
            .iter()
            .map(|(d, s)| (*d, s.sum(&other.slices[d])))
            .collect();
        Ideal { generators, slices }
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let slices = self
            .slices
            .iter()
            .map(|(d, s)| (*d, s.intersect(&other.slices[d])))
            .collect();
        Ideal {
            generators: Vec::new(),
            slices,
        }
    }

    /// Size of the slice `I_d` as a subgroup of `R_d`.
    pub fn slice_measure(&self, ring: &GradedRing, degree: i64) -> Measure {
        self.slice(ring, degree)
            .measure()
            .quotient(&ring.zero_span().measure())
    }

    /// Product of slice sizes over all slice keys (a full period when periodic).
    pub fn measure(&self, ring: &GradedRing) -> Measure {
        let unit = if ring.coeffs().is_rational() {
            Measure::Dim(0)
        } else {
            Measure::Card(1)
        };
        ring.slice_keys()
            .into_iter()
            .fold(unit, |acc, d| acc.product(&self.slice_measure(ring, d)))
    }

    /// Additive generators of `I_d`, excluding order relations.
    pub fn slice_generators(&self, ring: &GradedRing, degree: i64) -> Vec<RingElement> {
        let zero = ring.zero_span();
        self.slice(ring, degree)
            .rows()
            .iter()
            .filter(|r| !zero.contains(r))
            .map(|r| ring.element(degree, r.clone()))
            .collect()
    }

    /// All additive generators of the ideal over the slice keys.
    pub fn all_generators(&self, ring: &GradedRing) -> Vec<RingElement> {
        ring.slice_keys()
            .into_iter()
            .flat_map(|d| self.slice_generators(ring, d))
            .collect()
    }

    /// Product ideal `I J`.
    pub fn product(&self, ring: &GradedRing, other: &Ideal) -> Ideal {
        let a = self.all_generators(ring);
        let b = other.all_generators(ring);
        let mut gens = Vec::new();
        for x in &a {
            for y in &b {
                let z = ring.mul(x, y);
                if !ring.is_zero(&z) {
                    gens.push(z);
                }
            }
        }
        Ideal::generated(ring, &gens)
    }
}
