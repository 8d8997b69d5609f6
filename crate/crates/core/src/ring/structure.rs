//! Radical, idempotents, product decomposition, annihilators and socles.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::spec::{BasisSpec, CoeffSpec, PeriodicitySpec, ProductSpec, RingSpec, TermSpec};
use super::{GradedRing, Ideal, RingElement};
use crate::error::RingError;
use crate::linalg::{
    is_zero_vec, kernel, sub_vec, unit_vec, zero_vec, CyclicDecomposition, Measure, Solver, Span,
    Vector,
};
use crate::scalar::is_prime;

/// Largest slice that brute-force routines will enumerate.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

/// Outcome of the double-annihilator test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleAnnihilator {
    pub holds: bool,
    /// An element `x` with `ann(ann(x)) != (x)`.
    pub witness: Option<RingElement>,
}

/// Result of rebuilding a ring from per-slice cyclic decompositions.
pub(crate) struct Rebuilt {
    pub ring: GradedRing,
}

impl GradedRing {
    /// Additive order of `1`; `0` over `Q`.
    pub fn characteristic(&self) -> u64 {
        if self.coeffs().is_rational() {
            return 0;
        }
        let one = self.one();
        let mut ch = 1u64;
        for (k, a) in one.coeffs.iter().enumerate() {
            let o = self.basis()[k].order;
            let a = *a.numer() as u64;
            if !a.is_multiple_of(o) {
                ch = ch.lcm(&(o / a.gcd(&o)));
            }
        }
        ch
    }

    /// `x` is a unit iff `1` lies in `x R_{-|x|}`.
    pub fn is_unit(&self, x: &RingElement) -> bool {
        let images = self.mult_images(x, -x.degree);
        if images.is_empty() {
            return false;
        }
        Solver::new(self.coeffs(), &images, &self.zero_span(), self.n())
            .solve(&self.one().coeffs)
            .is_some()
    }

    pub fn inverse(&self, x: &RingElement) -> Option<RingElement> {
        let gens = self.slice_gens(-x.degree);
        let images: Vec<Vector> = gens.iter().map(|g| self.mul_vec(&x.coeffs, g)).collect();
        let y = Solver::new(self.coeffs(), &images, &self.zero_span(), self.n())
            .solve(&self.one().coeffs)?;
        Some(self.combine(-x.degree, &gens, &y))
    }

    pub(crate) fn combine(
        &self,
        degree: i64,
        gens: &[Vector],
        coords: &[crate::scalar::Scalar],
    ) -> RingElement {
        let c = self.coeffs();
        let mut v = zero_vec(self.n());
        for (g, a) in gens.iter().zip(coords) {
            crate::linalg::axpy(c, &mut v, a, g);
        }
        self.element(degree, v)
    }

    /// Subgroup of `R_degree` spanned by kernel coordinates over `slice_gens(degree)`.
    fn span_from_coords(&self, degree: i64, coords: &Span) -> Span {
        let gens = self.slice_gens(degree);
        let rows = coords
            .rows()
            .iter()
            .map(|r| self.combine(degree, &gens, r).coeffs);
        self.zero_span().with_rows(rows)
    }

    /// Nilradical of the degree-zero subring.
    pub fn degree_zero_nilradical(&self, cap: u128) -> Result<Span, RingError> {
        let c = *self.coeffs();
        let m = c.modulus();
        let gens = self.slice_gens(0);
        let zero = self.zero_span();
        if m == 0 {
            // radical of the trace form: nilradical in characteristic zero
            let images: Vec<Vector> = gens
                .iter()
                .map(|x| {
                    gens.iter()
                        .map(|y| self.trace0(&self.mul_vec(x, y)))
                        .collect()
                })
                .collect();
            let k = kernel(&c, &images, &Span::zero(&c, gens.len()), gens.len());
            return Ok(self.span_from_coords(0, &k));
        }
        if is_prime(m) {
            // kernel of a high enough power of Frobenius
            let dim = gens.len().max(1) as u64;
            let mut q = 1u64;
            let mut steps = 0;
            while q < dim {
                q = q.saturating_mul(m);
                steps += 1;
            }
            let images: Vec<Vector> = gens
                .iter()
                .map(|g| {
                    let mut z = self.element(0, g.clone());
                    for _ in 0..steps {
                        z = self.pow(&z, m as u32);
                    }
                    z.coeffs
                })
                .collect();
            let k = kernel(&c, &images, &zero, self.n());
            return Ok(self.span_from_coords(0, &k));
        }
        let elems = self.enumerate_slice(0, cap)?;
        let size = elems.len() as f64;
        let mut squarings = 0;
        while (1u64 << squarings) as f64 <= size.log2() + 1.0 {
            squarings += 1;
        }
        let nil = elems.into_iter().filter(|x| {
            let mut y = x.clone();
            for _ in 0..squarings {
                y = self.mul(&y, &y);
            }
            self.is_zero(&y)
        });
        Ok(zero.with_rows(nil.map(|x| x.coeffs)))
    }

    fn trace0(&self, z: &[crate::scalar::Scalar]) -> crate::scalar::Scalar {
        let c = self.coeffs();
        self.slice_indices(0).into_iter().fold(c.zero(), |acc, k| {
            let prod = self.mul_vec(z, &unit_vec(c, self.n(), k));
            c.add(&acc, &prod[k])
        })
    }

    /// Graded Jacobson radical with an explicit enumeration cap.
    pub fn radical_with_cap(&self, cap: u128) -> Result<Ideal, RingError> {
        let c = *self.coeffs();
        let n = self.n();
        let nil = self.degree_zero_nilradical(cap)?;
        let mut slices = BTreeMap::new();
        for d in self.slice_keys() {
            if self.slice_key(d) == self.slice_key(0) {
                slices.insert(d, nil.clone());
                continue;
            }
            let src = self.slice_gens(d);
            let others = self.slice_gens(-d);
            if others.is_empty() {
                slices.insert(d, self.slice_span(d));
                continue;
            }
            let r = others.len();
            let images: Vec<Vector> = src
                .iter()
                .map(|y| others.iter().flat_map(|z| self.mul_vec(y, z)).collect())
                .collect();
            let mut rel = Vec::new();
            for b in 0..r {
                for row in nil.rows() {
                    let mut v = zero_vec(n * r);
                    v[b * n..(b + 1) * n].clone_from_slice(row);
                    rel.push(v);
                }
            }
            let k = kernel(&c, &images, &Span::new(&c, rel, n * r), n * r);
            slices.insert(d, self.span_from_coords(d, &k));
        }
        Ok(Ideal::from_slices(self, Vec::new(), |d| {
            slices[&d].rows().to_vec()
        }))
    }

    /// Graded Jacobson radical: homogeneous `y` with `y R_{-|y|}` nilpotent in degree 0.
    pub fn radical(&self) -> Result<Ideal, RingError> {
        self.radical_with_cap(DEFAULT_ENUM_CAP)
    }

    /// All idempotents (they live in degree zero).
    pub fn idempotents(&self) -> Result<Vec<RingElement>, RingError> {
        let m = self.coeffs().modulus();
        if m != 0 && !is_prime(m) {
            let all = self.enumerate_slice(0, DEFAULT_ENUM_CAP)?;
            return Ok(all.into_iter().filter(|e| self.mul(e, e) == *e).collect());
        }
        let prim = self.primitive_idempotents()?;
        if prim.len() > 20 {
            return Err(RingError::SizeCapExceeded(1u128 << prim.len()));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << prim.len()) {
            let mut e = self.zero(0);
            for (i, p) in prim.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    e = self.add(&e, p);
                }
            }
            out.push(e);
        }
        Ok(out)
    }

    /// A complete set of primitive orthogonal idempotents.
    pub fn primitive_idempotents(&self) -> Result<Vec<RingElement>, RingError> {
        let c = *self.coeffs();
        let m = c.modulus();
        if self.n() == 0 {
            return Ok(Vec::new());
        }
        if m == 0 {
            let nil = self.degree_zero_nilradical(DEFAULT_ENUM_CAP)?;
            let top = self.slice_indices(0).len() - nil.rank();
            return if top == 1 {
                Ok(vec![self.one()])
            } else {
                Err(RingError::UnsupportedCoefficients(
                    "idempotent splitting over Q is only supported for local degree-zero parts"
                        .into(),
                ))
            };
        }
        if !is_prime(m) {
            let all = self.idempotents()?;
            let nonzero: Vec<_> = all.into_iter().filter(|e| !self.is_zero(e)).collect();
            let prim = nonzero
                .iter()
                .filter(|e| !nonzero.iter().any(|f| f != *e && self.mul(e, f) == *f))
                .cloned()
                .collect();
            return Ok(prim);
        }
        // fixed points of Frobenius form a product of copies of F_p
        let gens = self.slice_gens(0);
        let images: Vec<Vector> = gens
            .iter()
            .map(|g| {
                let z = self.element(0, g.clone());
                sub_vec(&c, &self.pow(&z, m as u32).coeffs, g)
            })
            .collect();
        let fixed = kernel(&c, &images, &self.zero_span(), self.n());
        let mut prim = vec![self.one()];
        for row in fixed.rows() {
            let z = self.combine(0, &gens, row);
            let mut next = Vec::new();
            for e in &prim {
                for lambda in 0..m {
                    let shifted =
                        self.sub(&z, &self.scale(&c.from_int(lambda as i64), &self.one()));
                    let indicator = self.sub(&self.one(), &self.pow(&shifted, (m - 1) as u32));
                    let f = self.mul(e, &indicator);
                    if !self.is_zero(&f) {
                        next.push(f);
                    }
                }
            }
            prim = next;
        }
        for e in &prim {
            if self.mul(e, e) != *e {
                return Err(RingError::NotSemiperfect);
            }
        }
        Ok(prim)
    }

    pub fn is_local(&self) -> Result<bool, RingError> {
        Ok(self.primitive_idempotents()?.len() == 1)
    }

    pub fn maximal_ideal(&self) -> Result<Ideal, RingError> {
        if !self.is_local()? {
            return Err(RingError::NotLocal);
        }
        self.radical()
    }

    pub fn residue_field(&self) -> Result<GradedRing, RingError> {
        let m = self.maximal_ideal()?;
        self.quotient(&m)
    }

    /// `R / I` with freshly computed structure constants.
    pub fn quotient(&self, ideal: &Ideal) -> Result<GradedRing, RingError> {
        Ok(self.quotient_map(ideal)?.ring)
    }

    pub(crate) fn quotient_map(&self, ideal: &Ideal) -> Result<Rebuilt, RingError> {
        let name = self.name().map(|s| format!("{s}/I"));
        self.rebuild(
            name,
            |d| self.slice_gens(d),
            |d| ideal.slice(self, d),
            &self.one().coeffs,
        )
    }

    /// Rebuild a ring whose slice `d` is `<gens(d)> / sub(d)` inside `R_d`, with unit `unit`.
    pub(crate) fn rebuild(
        &self,
        name: Option<String>,
        gens: impl Fn(i64) -> Vec<Vector>,
        sub: impl Fn(i64) -> Span,
        unit: &Vector,
    ) -> Result<Rebuilt, RingError> {
        let c = *self.coeffs();
        let mut slices = BTreeMap::new();
        let mut basis = Vec::new();
        let mut vectors = Vec::new();
        let mut used = std::collections::BTreeSet::new();
        for d in self.slice_keys() {
            let dec = CyclicDecomposition::new(&c, &gens(d), &sub(d));
            for (v, &o) in dec.basis.iter().zip(&dec.orders) {
                let original = (0..self.n())
                    .find(|&i| *v == unit_vec(&c, self.n(), i))
                    .map(|i| self.basis()[i].name.clone());
                let name = match original {
                    Some(s) if used.insert(s.clone()) => s,
                    _ => {
                        let mut k = basis.len();
                        while used.contains(&format!("e{k}")) {
                            k += 1;
                        }
                        let s = format!("e{k}");
                        used.insert(s.clone());
                        s
                    }
                };
                basis.push(BasisSpec {
                    name,
                    degree: d,
                    order: (o != c.modulus()).then_some(o),
                });
                vectors.push((d, v.clone()));
            }
            slices.insert(d, dec);
        }
        let offsets: BTreeMap<i64, usize> = {
            let mut acc = 0;
            slices
                .iter()
                .map(|(d, dec)| {
                    let o = acc;
                    acc += dec.len();
                    (*d, o)
                })
                .collect()
        };
        let coords =
            |degree: i64, v: &[crate::scalar::Scalar]| -> Result<Vec<TermSpec>, RingError> {
                let key = self.slice_key(degree);
                let Some(dec) = slices.get(&key) else {
                    return if is_zero_vec(v) {
                        Ok(Vec::new())
                    } else {
                        Err(RingError::Unsupported("ideal is not closed".into()))
                    };
                };
                let x = dec.coords(v).ok_or_else(|| {
                    RingError::Unsupported("subring is not closed under multiplication".into())
                })?;
                let vpow = self.period_degree().map_or(0, |p| (degree - key) / p);
                Ok(x.iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(i, a)| TermSpec {
                        coeff: CoeffSpec::from_scalar(a),
                        basis: basis[offsets[&key] + i].name.clone(),
                        vpow,
                    })
                    .collect())
            };
        let mut products = Vec::new();
        for (a, (da, va)) in vectors.iter().enumerate() {
            for (b, (db, vb)) in vectors.iter().enumerate() {
                let terms = coords(da + db, &self.mul_vec(va, vb))?;
                if !terms.is_empty() {
                    products.push(ProductSpec {
                        left: basis[a].name.clone(),
                        right: basis[b].name.clone(),
                        terms,
                    });
                }
            }
        }
        let unit = coords(0, unit)?;
        let spec = RingSpec {
            name,
            characteristic: c.modulus(),
            basis,
            periodicity: self.periodicity().map(|p| PeriodicitySpec {
                unit: p.unit.clone(),
                degree: p.degree,
            }),
            products,
            unit: Some(unit),
        };
        Ok(Rebuilt {
            ring: GradedRing::from_spec(&spec)?,
        })
    }

    /// Local factors `e_i R` for the primitive idempotents `e_i`.
    pub fn decompose_product(&self) -> Result<Vec<GradedRing>, RingError> {
        Ok(self
            .decompose_with_idempotents()?
            .into_iter()
            .map(|(r, _)| r)
            .collect())
    }

    pub fn decompose_with_idempotents(&self) -> Result<Vec<(GradedRing, RingElement)>, RingError> {
        let prim = self.primitive_idempotents()?;
        if prim.len() == 1 {
            return Ok(vec![(self.clone(), prim[0].clone())]);
        }
        let mut total = self.zero(0);
        for (i, e) in prim.iter().enumerate() {
            total = self.add(&total, e);
            for f in &prim[i + 1..] {
                if !self.is_zero(&self.mul(e, f)) {
                    return Err(RingError::NotSemiperfect);
                }
            }
        }
        if total != self.one() {
            return Err(RingError::NotSemiperfect);
        }
        let mut out = Vec::new();
        for (i, e) in prim.iter().enumerate() {
            let name = self.name().map(|s| format!("{s}#{i}"));
            let r = self.rebuild(
                name,
                |d| {
                    self.slice_gens(d)
                        .iter()
                        .map(|g| self.mul_vec(&e.coeffs, g))
                        .collect()
                },
                |_| self.zero_span(),
                &e.coeffs,
            )?;
            out.push((r.ring, e.clone()));
        }
        let whole = Ideal::unit(self).measure(self);
        let parts = out.iter().fold(unit_measure(self), |acc, (r, _)| {
            acc.product(&Ideal::unit(r).measure(r))
        });
        if whole != parts {
            return Err(RingError::NotSemiperfect);
        }
        Ok(out)
    }

    pub fn annihilator(&self, x: &RingElement) -> Ideal {
        self.annihilator_of(std::slice::from_ref(x))
    }

    /// `{y : y g = 0 for every g in gens}`.
    pub fn annihilator_of(&self, gens: &[RingElement]) -> Ideal {
        let c = *self.coeffs();
        let n = self.n();
        let r = gens.len();
        let zero = self.zero_span();
        let mut rel = Vec::new();
        for b in 0..r {
            for row in zero.rows() {
                let mut v = zero_vec(n * r);
                v[b * n..(b + 1) * n].clone_from_slice(row);
                rel.push(v);
            }
        }
        let rel = Span::new(&c, rel, n * r);
        let mut ideal = Ideal::from_slices(self, gens.to_vec(), |d| {
            let src = self.slice_gens(d);
            let images: Vec<Vector> = src
                .iter()
                .map(|y| {
                    gens.iter()
                        .flat_map(|g| self.mul_vec(y, &g.coeffs))
                        .collect()
                })
                .collect();
            let k = kernel(&c, &images, &rel, n * r);
            self.span_from_coords(d, &k).rows().to_vec()
        });
        ideal.generators = Vec::new();
        ideal
    }

    /// Tests `ann(ann(x)) = (x)` on basis elements first, then on every slice element.
    pub fn double_annihilator_holds(&self) -> Result<DoubleAnnihilator, RingError> {
        let fails = |x: &RingElement| {
            let principal = Ideal::generated(self, std::slice::from_ref(x));
            let ann = self.annihilator(x);
            let back = self.annihilator_of(&ann.all_generators(self));
            !back.same_as(&principal)
        };
        let mut candidates: Vec<RingElement> =
            (0..self.n()).map(|i| self.basis_element(i)).collect();
        for d in self.slice_keys() {
            match self.enumerate_slice(d, DEFAULT_ENUM_CAP) {
                Ok(all) => candidates.extend(all),
                Err(_) => {
                    let idx = self.slice_indices(d);
                    for (a, &i) in idx.iter().enumerate() {
                        for &j in &idx[a + 1..] {
                            candidates.push(
                                self.add(
                                    &self.basis_element_at(i, d),
                                    &self.basis_element_at(j, d),
                                ),
                            );
                        }
                    }
                }
            }
        }
        for x in candidates {
            if fails(&x) {
                return Ok(DoubleAnnihilator {
                    holds: false,
                    witness: Some(x),
                });
            }
        }
        Ok(DoubleAnnihilator {
            holds: true,
            witness: None,
        })
    }

    /// `ann(J)` for the graded radical `J`; the socle when `R` is local.
    pub fn socle(&self) -> Result<Ideal, RingError> {
        let j = self.radical()?;
        Ok(self.annihilator_of(&j.all_generators(self)))
    }

    /// Every local factor has socle of length one over its residue field.
    pub fn is_quasi_frobenius(&self) -> Result<bool, RingError> {
        for factor in self.decompose_product()? {
            let j = factor.radical()?;
            let top = Ideal::unit(&factor)
                .measure(&factor)
                .quotient(&j.measure(&factor));
            let soc = factor.socle()?.measure(&factor);
            if soc != top {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Some element of degree `d` is invertible.
    pub fn has_unit_in_degree(&self, d: i64) -> Result<bool, RingError> {
        let factors = self.decompose_product()?;
        if factors.is_empty() {
            return Ok(false);
        }
        for f in factors {
            let j = f.radical()?;
            if j.slice(&f, d) == f.slice_span(d) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A homogeneous unit of degree `d` in a local ring, if any.
    pub fn unit_in_degree(&self, d: i64) -> Result<Option<RingElement>, RingError> {
        let j = self.radical()?;
        let slice = j.slice(self, d);
        Ok(self
            .slice_gens(d)
            .into_iter()
            .map(|g| self.element(d, g))
            .find(|g| !slice.contains(&g.coeffs)))
    }
}

pub(crate) fn unit_measure(ring: &GradedRing) -> Measure {
    if ring.coeffs().is_rational() {
        Measure::Dim(0)
    } else {
        Measure::Card(1)
    }
}
