//! Graded commutative rings given by a homogeneous basis and structure constants.
//!
//! A ring is either supported on finitely many degrees, or periodic: there is a
//! central unit `v` of degree `d > 0` and every homogeneous element of degree `D`
//! is a combination of `b_i v^t` with `|b_i| + t d = D`. In both cases a
//! homogeneous element is stored as its degree together with one coefficient per
//! basis element; the power of `v` attached to each coefficient is implied.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use super::spec::{
    valid_name, BasisSpec, CoeffSpec, PeriodicitySpec, ProductSpec, RingSpec, TermSpec,
};
use crate::error::RingError;
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Solver, Span, Vector};
use crate::scalar::{format_scalar, Coeffs, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub degree: i64,
    /// Additive order; `0` over `Q`.
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodicity {
    pub unit: String,
    pub degree: i64,
}

/// A homogeneous ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub degree: i64,
    pub coeffs: Vector,
}

/// A validated graded commutative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    name: Option<String>,
    coeffs: Coeffs,
    basis: Vec<BasisElem>,
    period: Option<Periodicity>,
    table: Vec<Vec<Vector>>,
    unit: Vector,
}

impl GradedRing {
    pub fn from_json(text: &str) -> Result<Self, RingError> {
        Self::from_spec(&RingSpec::from_json(text)?)
    }

    /// Build and exhaustively validate a ring from its description.
    pub fn from_spec(spec: &RingSpec) -> Result<Self, RingError> {
        let coeffs = match spec.characteristic {
            0 => Coeffs::rationals(),
            1 => return Err(RingError::BadCharacteristic(1)),
            m => Coeffs::modular(m),
        };
        let m = spec.characteristic;
        let mut basis = Vec::with_capacity(spec.basis.len());
        let mut seen = BTreeSet::new();
        for b in &spec.basis {
            if !valid_name(&b.name) {
                return Err(RingError::InvalidName(b.name.clone()));
            }
            if !seen.insert(b.name.clone()) {
                return Err(RingError::DuplicateName(b.name.clone()));
            }
            let order = match (m, b.order) {
                (0, None) | (0, Some(0)) => 0,
                (0, Some(o)) => {
                    return Err(RingError::BadOrder {
                        name: b.name.clone(),
                        order: o,
                    })
                }
                (m, None) => m,
                (m, Some(o)) => {
                    if o < 2 || m % o != 0 {
                        return Err(RingError::BadOrder {
                            name: b.name.clone(),
                            order: o,
                        });
                    }
                    o
                }
            };
            basis.push(BasisElem {
                name: b.name.clone(),
                degree: b.degree,
                order,
            });
        }
        let period = match &spec.periodicity {
            None => None,
            Some(p) => {
                if p.degree <= 0 {
                    return Err(RingError::BadPeriod);
                }
                if !valid_name(&p.unit) {
                    return Err(RingError::InvalidName(p.unit.clone()));
                }
                if seen.contains(&p.unit) {
                    return Err(RingError::DuplicateName(p.unit.clone()));
                }
                Some(Periodicity {
                    unit: p.unit.clone(),
                    degree: p.degree,
                })
            }
        };
        let n = basis.len();
        let names: Vec<String> = basis.iter().map(|b| b.name.clone()).collect();
        let index = |name: &str| -> Result<usize, RingError> {
            names
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| RingError::UnknownBasis(name.to_string()))
        };
        let mut table = vec![vec![zero_vec(n); n]; n];
        let mut listed = vec![vec![false; n]; n];
        for p in &spec.products {
            let (i, j) = (index(&p.left)?, index(&p.right)?);
            listed[i][j] = true;
            let expected = basis[i].degree + basis[j].degree;
            for t in &p.terms {
                let k = index(&t.basis)?;
                let shift = match &period {
                    Some(per) => t.vpow * per.degree,
                    None if t.vpow != 0 => {
                        return Err(RingError::DegreeMismatch {
                            left: i,
                            right: j,
                            found: basis[k].degree,
                            expected,
                        })
                    }
                    None => 0,
                };
                let found = basis[k].degree + shift;
                if found != expected {
                    return Err(RingError::DegreeMismatch {
                        left: i,
                        right: j,
                        found,
                        expected,
                    });
                }
                let a = t.coeff.to_scalar(&coeffs)?;
                table[i][j][k] = coeffs.add(&table[i][j][k], &a);
            }
        }
        // implicit identity products for a basis element named `one`
        let implicit_one = if spec.unit.is_none() {
            basis.iter().position(|b| b.name == "one" && b.degree == 0)
        } else {
            None
        };
        if let Some(o) = implicit_one {
            for j in 0..n {
                if !listed[o][j] {
                    table[o][j] = unit_vec(&coeffs, n, j);
                }
                if !listed[j][o] {
                    table[j][o] = unit_vec(&coeffs, n, j);
                }
            }
        }
        // compatibility with additive orders
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = table[i][j][k];
                    if coeffs.is_rational() || x.is_zero() {
                        continue;
                    }
                    let ok = |o: u64| {
                        coeffs.mul(&coeffs.from_int(o as i64), &x).numer() % basis[k].order as i64
                            == 0
                    };
                    if !ok(basis[i].order) || !ok(basis[j].order) {
                        return Err(RingError::OrderViolation { left: i, right: j });
                    }
                    table[i][j][k] = coeffs.reduce_mod(&x, basis[k].order);
                }
            }
        }
        let mut ring = GradedRing {
            name: spec.name.clone(),
            coeffs,
            basis,
            period,
            table,
            unit: Vec::new(),
        };
        ring.check_commutativity()?;
        ring.check_associativity()?;
        ring.unit = match (&spec.unit, implicit_one) {
            (Some(terms), _) => {
                let mut u = zero_vec(n);
                for t in terms {
                    let k = index(&t.basis)?;
                    if ring.basis[k].degree + t.vpow * ring.period_degree().unwrap_or(0) != 0
                        || (ring.period.is_none() && t.vpow != 0)
                    {
                        return Err(RingError::BadUnit);
                    }
                    let a = t.coeff.to_scalar(&ring.coeffs)?;
                    u[k] = ring.coeffs.add(&u[k], &a);
                }
                let u = ring.normalize(u);
                if !ring.is_identity(&u) {
                    return Err(RingError::BadUnit);
                }
                u
            }
            (None, Some(o)) => unit_vec(&ring.coeffs, n, o),
            (None, None) => ring.solve_unit()?,
        };
        Ok(ring)
    }

    fn check_commutativity(&self) -> Result<(), RingError> {
        let n = self.n();
        for i in 0..n {
            for j in i..n {
                let s = self
                    .coeffs
                    .sign(self.basis[i].degree * self.basis[j].degree);
                let rhs: Vector = self.table[j][i]
                    .iter()
                    .map(|x| self.coeffs.mul(&s, x))
                    .collect();
                if self.normalize(rhs) != self.table[i][j] {
                    return Err(RingError::CommutativityViolation(i, j));
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), RingError> {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul_vec(ij, &unit_vec(&self.coeffs, n, k));
                    let right = self.mul_vec(&unit_vec(&self.coeffs, n, i), &self.table[j][k]);
                    if left != right {
                        return Err(RingError::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn is_identity(&self, u: &[Scalar]) -> bool {
        (0..self.n()).all(|j| {
            let e = unit_vec(&self.coeffs, self.n(), j);
            self.mul_vec(u, &e) == e && self.mul_vec(&e, u) == e
        })
    }

    fn solve_unit(&self) -> Result<Vector, RingError> {
        let n = self.n();
        let c = &self.coeffs;
        let slice = self.slice_indices(0);
        // unknown e in slice 0: e * b_j = b_j for every j
        let images: Vec<Vector> = slice
            .iter()
            .map(|&i| {
                let mut img = Vec::with_capacity(n * n);
                for j in 0..n {
                    img.extend(self.table[i][j].iter().cloned());
                }
                img
            })
            .collect();
        let mut rel = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if !c.is_rational() {
                    let mut r = zero_vec(n * n);
                    r[j * n + k] = c.from_int(self.basis[k].order as i64);
                    rel.push(r);
                }
            }
        }
        let rel = Span::new(c, rel, n * n);
        let mut target = Vec::with_capacity(n * n);
        for j in 0..n {
            target.extend(unit_vec(c, n, j));
        }
        let x = Solver::new(c, &images, &rel, n * n)
            .solve(&target)
            .ok_or(RingError::NoUnit)?;
        let mut u = zero_vec(n);
        for (xi, &i) in x.iter().zip(&slice) {
            u[i] = *xi;
        }
        let u = self.normalize(u);
        if self.is_identity(&u) {
            Ok(u)
        } else {
            Err(RingError::NoUnit)
        }
    }

    /// Serialize back to a description; parsing the result gives an equal ring.
    pub fn to_spec(&self) -> RingSpec {
        let n = self.n();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisSpec {
                name: b.name.clone(),
                degree: b.degree,
                order: (b.order != self.coeffs.modulus()).then_some(b.order),
            })
            .collect();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<TermSpec> = (0..n)
                    .filter(|&k| !self.table[i][j][k].is_zero())
                    .map(|k| TermSpec {
                        coeff: CoeffSpec::from_scalar(&self.table[i][j][k]),
                        basis: self.basis[k].name.clone(),
                        vpow: self.vpow(k, self.basis[i].degree + self.basis[j].degree),
                    })
                    .collect();
                if !terms.is_empty() {
                    products.push(ProductSpec {
                        left: self.basis[i].name.clone(),
                        right: self.basis[j].name.clone(),
                        terms,
                    });
                }
            }
        }
        let unit = (0..n)
            .filter(|&k| !self.unit[k].is_zero())
            .map(|k| TermSpec {
                coeff: CoeffSpec::from_scalar(&self.unit[k]),
                basis: self.basis[k].name.clone(),
                vpow: self.vpow(k, 0),
            })
            .collect();
        RingSpec {
            name: self.name.clone(),
            characteristic: self.coeffs.modulus(),
            basis,
            periodicity: self.period.as_ref().map(|p| PeriodicitySpec {
                unit: p.unit.clone(),
                degree: p.degree,
            }),
            products,
            unit: Some(unit),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn periodicity(&self) -> Option<&Periodicity> {
        self.period.as_ref()
    }

    pub fn period_degree(&self) -> Option<i64> {
        self.period.as_ref().map(|p| p.degree)
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    /// True when the ring is finite and concentrated in degree zero.
    pub fn is_finite_ungraded(&self) -> bool {
        !self.coeffs.is_rational()
            && self.period.is_none()
            && self.basis.iter().all(|b| b.degree == 0)
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    /// Power of `v` carried by basis element `k` inside degree `degree`.
    pub fn vpow(&self, k: usize, degree: i64) -> i64 {
        match &self.period {
            Some(p) => (degree - self.basis[k].degree).div_euclid(p.degree),
            None => 0,
        }
    }

    pub fn in_slice(&self, i: usize, degree: i64) -> bool {
        match &self.period {
            Some(p) => (degree - self.basis[i].degree).rem_euclid(p.degree) == 0,
            None => self.basis[i].degree == degree,
        }
    }

    pub fn slice_indices(&self, degree: i64) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.in_slice(i, degree))
            .collect()
    }

    /// Representative degrees covering every slice exactly once: the occupied
    /// degrees of a finite ring, or `0..d` for a periodic ring.
    pub fn slice_keys(&self) -> Vec<i64> {
        match &self.period {
            Some(p) => (0..p.degree).collect(),
            None => {
                let set: BTreeSet<i64> = self.basis.iter().map(|b| b.degree).collect();
                set.into_iter().collect()
            }
        }
    }

    /// Canonical representative of `degree` among `slice_keys` (or `degree` itself).
    pub fn slice_key(&self, degree: i64) -> i64 {
        match &self.period {
            Some(p) => degree.rem_euclid(p.degree),
            None => degree,
        }
    }

    /// Additive generators of a slice.
    pub fn slice_gens(&self, degree: i64) -> Vec<Vector> {
        self.slice_indices(degree)
            .into_iter()
            .map(|i| unit_vec(&self.coeffs, self.n(), i))
            .collect()
    }

    /// Relations `o_i e_i` expressing additive orders; empty over `Q`.
    pub fn order_relations(&self) -> Vec<Vector> {
        if self.coeffs.is_rational() {
            return Vec::new();
        }
        (0..self.n())
            .filter(|&i| self.basis[i].order != self.coeffs.modulus())
            .map(|i| {
                let mut r = zero_vec(self.n());
                r[i] = self.coeffs.from_int(self.basis[i].order as i64);
                r
            })
            .collect()
    }

    /// The zero subgroup of `R` (i.e. the span of the order relations).
    pub fn zero_span(&self) -> Span {
        Span::new(&self.coeffs, self.order_relations(), self.n())
    }

    /// The subgroup of slice `degree`, including order relations.
    pub fn slice_span(&self, degree: i64) -> Span {
        self.zero_span().with_rows(self.slice_gens(degree))
    }

    /// Number of elements of a slice (finite coefficients).
    pub fn slice_size(&self, degree: i64) -> Option<u128> {
        if self.coeffs.is_rational() {
            return None;
        }
        self.slice_indices(degree)
            .iter()
            .try_fold(1u128, |acc, &i| {
                acc.checked_mul(self.basis[i].order as u128)
            })
    }

    pub fn normalize(&self, mut v: Vector) -> Vector {
        if !self.coeffs.is_rational() {
            for (x, b) in v.iter_mut().zip(&self.basis) {
                *x = self.coeffs.reduce_mod(x, b.order);
            }
        }
        v
    }

    /// `normalize` applied to each length-`n` block of `v`.
    pub fn normalize_blocks(&self, v: Vector) -> Vector {
        if self.n() == 0 {
            return v;
        }
        v.chunks(self.n())
            .flat_map(|b| self.normalize(b.to_vec()))
            .collect()
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let c = &self.coeffs;
        let n = self.n();
        let mut out = zero_vec(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = c.mul(&x[i], &y[j]);
                axpy(c, &mut out, &s, &self.table[i][j]);
            }
        }
        self.normalize(out)
    }

    pub fn element(&self, degree: i64, coeffs: Vector) -> RingElement {
        let coeffs = self.normalize(coeffs);
        debug_assert!(coeffs
            .iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || self.in_slice(i, degree)));
        RingElement { degree, coeffs }
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        RingElement {
            degree: self.basis[i].degree,
            coeffs: unit_vec(&self.coeffs, self.n(), i),
        }
    }

    /// `b_i v^t`
    pub fn basis_element_at(&self, i: usize, degree: i64) -> RingElement {
        debug_assert!(self.in_slice(i, degree));
        RingElement {
            degree,
            coeffs: unit_vec(&self.coeffs, self.n(), i),
        }
    }

    pub fn one(&self) -> RingElement {
        RingElement {
            degree: 0,
            coeffs: self.unit.clone(),
        }
    }

    pub fn zero(&self, degree: i64) -> RingElement {
        RingElement {
            degree,
            coeffs: zero_vec(self.n()),
        }
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        RingElement {
            degree: x.degree + y.degree,
            coeffs: self.mul_vec(&x.coeffs, &y.coeffs),
        }
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        assert_eq!(x.degree, y.degree, "adding elements of different degrees");
        let v = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| self.coeffs.add(a, b))
            .collect();
        RingElement {
            degree: x.degree,
            coeffs: self.normalize(v),
        }
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        assert_eq!(
            x.degree, y.degree,
            "subtracting elements of different degrees"
        );
        let v = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| self.coeffs.sub(a, b))
            .collect();
        RingElement {
            degree: x.degree,
            coeffs: self.normalize(v),
        }
    }

    pub fn scale(&self, s: &Scalar, x: &RingElement) -> RingElement {
        let v = x.coeffs.iter().map(|a| self.coeffs.mul(s, a)).collect();
        RingElement {
            degree: x.degree,
            coeffs: self.normalize(v),
        }
    }

    pub fn pow(&self, x: &RingElement, e: u32) -> RingElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn is_zero(&self, x: &RingElement) -> bool {
        is_zero_vec(&self.normalize(x.coeffs.clone()))
    }

    /// Images of the additive generators of slice `degree` under `y -> x y`.
    pub fn mult_images(&self, x: &RingElement, degree: i64) -> Vec<Vector> {
        self.slice_gens(degree)
            .iter()
            .map(|e| self.mul_vec(&x.coeffs, e))
            .collect()
    }

    /// Every element of a slice; fails when larger than `cap`.
    pub fn enumerate_slice(&self, degree: i64, cap: u128) -> Result<Vec<RingElement>, RingError> {
        if self.coeffs.is_rational() {
            return Err(RingError::UnsupportedCoefficients(
                "cannot enumerate a rational slice".into(),
            ));
        }
        let size = self.slice_size(degree).unwrap_or(u128::MAX);
        if size > cap {
            return Err(RingError::SizeCapExceeded(size));
        }
        let idx = self.slice_indices(degree);
        let mut out = vec![zero_vec(self.n())];
        for &i in &idx {
            let mut next = Vec::with_capacity(out.len() * self.basis[i].order as usize);
            for v in &out {
                for a in 0..self.basis[i].order as i64 {
                    let mut w = v.clone();
                    w[i] = Scalar::from_integer(a);
                    next.push(w);
                }
            }
            out = next;
        }
        Ok(out
            .into_iter()
            .map(|coeffs| RingElement { degree, coeffs })
            .collect())
    }

    pub fn format(&self, x: &RingElement) -> String {
        let mut parts = Vec::new();
        for (k, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut term = String::new();
            if *a != self.coeffs.one() {
                term.push_str(&format_scalar(a));
                term.push('*');
            }
            term.push_str(&self.basis[k].name);
            let t = self.vpow(k, x.degree);
            if t != 0 {
                let p = self.period.as_ref().unwrap();
                term.push_str(&format!("*{}^{}", p.unit, t));
            }
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return write!(f, "{name}");
        }
        let names: Vec<_> = self
            .basis
            .iter()
            .map(|b| format!("{}[{}]", b.name, b.degree))
            .collect();
        write!(f, "{}<{}>", self.coeffs, names.join(", "))?;
        if let Some(p) = &self.period {
            write!(f, "[{}^±1, |{}|={}]", p.unit, p.unit, p.degree)?;
        }
        Ok(())
    }
}
