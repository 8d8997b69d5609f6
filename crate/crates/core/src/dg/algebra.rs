//! The algebra `A = k<a, u> / (a^2, au + ua + v)` with `da = u^2`, `du = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::DgError;
use crate::scalar::{is_prime, Coeffs, Scalar};

/// `v^t a^ε u^m`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub t: i64,
    pub a: bool,
    pub m: u32,
}

impl Mono {
    pub const ONE: Mono = Mono {
        t: 0,
        a: false,
        m: 0,
    };

    pub fn new(t: i64, a: bool, m: u32) -> Self {
        Mono { t, a, m }
    }
}

/// A finite linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DgElem {
    terms: BTreeMap<Mono, Scalar>,
}

impl DgElem {
    pub fn zero() -> Self {
        DgElem::default()
    }

    pub fn mono(c: Scalar, m: Mono) -> Self {
        let mut e = DgElem::default();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|m| m.m).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, coeffs: &Coeffs, c: &Scalar, m: Mono) {
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry = coeffs.add(entry, c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, coeffs: &Coeffs, c: &Scalar, other: &DgElem) {
        for (m, x) in &other.terms {
            self.add_term(coeffs, &coeffs.mul(c, x), *m);
        }
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).copied().unwrap_or_else(Scalar::zero)
    }
}

/// The differential graded algebra, over `F_p[v^±]` (or `F_p` when `|v| = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra {
    coeffs: Coeffs,
    /// `|u| = i`
    pub i: i64,
    /// the differential has degree `-n`
    pub n: i64,
    pub weight_bound: u32,
}

pub const DEFAULT_WEIGHT_BOUND: u32 = 16;

impl DgAlgebra {
    /// Validates the parameters, then checks symbolically that `d(a^2)` and
    /// `d(au + ua + v)` vanish.
    pub fn new(p: u64, i: i64, n: i64) -> Result<Self, DgError> {
        Self::with_weight_bound(p, i, n, DEFAULT_WEIGHT_BOUND)
    }

    pub fn with_weight_bound(p: u64, i: i64, n: i64, weight_bound: u32) -> Result<Self, DgError> {
        if !is_prime(p) {
            return Err(DgError::NotPrime(p));
        }
        let alg = DgAlgebra {
            coeffs: Coeffs::modular(p),
            i,
            n,
            weight_bound,
        };
        if p != 2 {
            if i.rem_euclid(2) == 0 && n.rem_euclid(2) == 0 {
                return Err(DgError::ParityObstruction(format!(
                    "i = {i} and n = {n} are both even and the characteristic is {p}"
                )));
            }
            if alg.v_degree().rem_euclid(2) == 1 {
                return Err(DgError::ParityObstruction(format!(
                    "|v| = {} is odd, so F_{p}[v^±] is not graded commutative",
                    alg.v_degree()
                )));
            }
        }
        alg.check_relations()?;
        Ok(alg)
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn p(&self) -> u64 {
        self.coeffs.modulus()
    }

    pub fn a_degree(&self) -> i64 {
        2 * self.i + self.n
    }

    pub fn u_degree(&self) -> i64 {
        self.i
    }

    pub fn v_degree(&self) -> i64 {
        3 * self.i + self.n
    }

    /// True when `v = 1` and the base is the prime field.
    pub fn v_is_one(&self) -> bool {
        self.v_degree() == 0
    }

    pub fn degree(&self, m: &Mono) -> i64 {
        m.t * self.v_degree() + if m.a { self.a_degree() } else { 0 } + m.m as i64 * self.i
    }

    fn norm(&self, m: Mono) -> Mono {
        if self.v_is_one() {
            Mono { t: 0, ..m }
        } else {
            m
        }
    }

    pub fn one(&self) -> DgElem {
        DgElem::mono(self.coeffs.one(), Mono::ONE)
    }

    pub fn gen_a(&self) -> DgElem {
        DgElem::mono(self.coeffs.one(), Mono::new(0, true, 0))
    }

    pub fn gen_u(&self) -> DgElem {
        DgElem::mono(self.coeffs.one(), Mono::new(0, false, 1))
    }

    pub fn gen_v(&self, t: i64) -> DgElem {
        DgElem::mono(self.coeffs.one(), self.norm(Mono::new(t, false, 0)))
    }

    pub fn monomial(&self, c: i64, m: Mono) -> DgElem {
        DgElem::mono(self.coeffs.from_int(c), self.norm(m))
    }

    /// Product of normal-form monomials, using `u^m a = (-1)^m a u^m - [m odd] v u^{m-1}`.
    pub fn mul_mono(&self, x: &Mono, y: &Mono) -> DgElem {
        let c = &self.coeffs;
        let mut out = DgElem::zero();
        let t = x.t + y.t;
        if !y.a {
            out.add_term(c, &c.one(), self.norm(Mono::new(t, x.a, x.m + y.m)));
            return out;
        }
        let odd = x.m % 2 == 1;
        if !x.a {
            out.add_term(
                c,
                &c.sign(x.m as i64),
                self.norm(Mono::new(t, true, x.m + y.m)),
            );
        }
        if odd {
            out.add_term(
                c,
                &c.from_int(-1),
                self.norm(Mono::new(t + 1, x.a, x.m - 1 + y.m)),
            );
        }
        out
    }

    /// Product without the weight check.
    pub fn mul_raw(&self, x: &DgElem, y: &DgElem) -> DgElem {
        let c = &self.coeffs;
        let mut out = DgElem::zero();
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                out.add_scaled(c, &c.mul(cx, cy), &self.mul_mono(mx, my));
            }
        }
        out
    }

    pub fn multiply(&self, x: &DgElem, y: &DgElem) -> Result<DgElem, DgError> {
        let z = self.mul_raw(x, y);
        self.check_weight(&z)?;
        Ok(z)
    }

    fn check_weight(&self, z: &DgElem) -> Result<(), DgError> {
        let w = z.max_weight();
        if w > self.weight_bound {
            return Err(DgError::WeightOverflow {
                found: w,
                bound: self.weight_bound,
            });
        }
        Ok(())
    }

    /// `d(v^t u^m) = 0`, `d(v^t a u^m) = (-1)^{n t |v|} v^t u^{m+2}`.
    pub fn d_mono(&self, m: &Mono) -> DgElem {
        if !m.a {
            return DgElem::zero();
        }
        let c = &self.coeffs;
        DgElem::mono(
            c.sign(self.n * m.t * self.v_degree()),
            self.norm(Mono::new(m.t, false, m.m + 2)),
        )
    }

    pub fn d_raw(&self, x: &DgElem) -> DgElem {
        let c = &self.coeffs;
        let mut out = DgElem::zero();
        for (m, a) in &x.terms {
            out.add_scaled(c, a, &self.d_mono(m));
        }
        out
    }

    pub fn differential(&self, x: &DgElem) -> Result<DgElem, DgError> {
        let z = self.d_raw(x);
        self.check_weight(&z)?;
        Ok(z)
    }

    pub fn scale(&self, s: &Scalar, x: &DgElem) -> DgElem {
        let mut out = DgElem::zero();
        out.add_scaled(&self.coeffs, s, x);
        out
    }

    pub fn add(&self, x: &DgElem, y: &DgElem) -> DgElem {
        let mut out = x.clone();
        out.add_scaled(&self.coeffs, &self.coeffs.one(), y);
        out
    }

    pub fn sub(&self, x: &DgElem, y: &DgElem) -> DgElem {
        let mut out = x.clone();
        out.add_scaled(&self.coeffs, &self.coeffs.from_int(-1), y);
        out
    }

    /// Degree of a homogeneous element (`None` for zero or mixed degrees).
    pub fn elem_degree(&self, x: &DgElem) -> Option<i64> {
        let mut it = x.terms.keys().map(|m| self.degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Applies `d` letter by letter with the signed Leibniz rule and rewrites:
    /// this is how the relations are checked to be compatible with `d`.
    pub fn leibniz_on_word(&self, word: &[Letter]) -> DgElem {
        let c = &self.coeffs;
        let mut out = DgElem::zero();
        let mut prefix_degree = 0;
        for (pos, l) in word.iter().enumerate() {
            let dl = match l {
                Letter::A => self.mul_raw(&self.gen_u(), &self.gen_u()),
                _ => DgElem::zero(),
            };
            if !dl.is_zero() {
                let left = rewrite(self, &word[..pos], Strategy::Leftmost);
                let right = rewrite(self, &word[pos + 1..], Strategy::Leftmost);
                let term = self.mul_raw(&self.mul_raw(&left, &dl), &right);
                out.add_scaled(c, &c.sign(self.n * prefix_degree), &term);
            }
            prefix_degree += self.letter_degree(*l);
        }
        out
    }

    pub fn letter_degree(&self, l: Letter) -> i64 {
        match l {
            Letter::A => self.a_degree(),
            Letter::U => self.u_degree(),
            Letter::V => self.v_degree(),
        }
    }

    fn check_relations(&self) -> Result<(), DgError> {
        let d_aa = self.leibniz_on_word(&[Letter::A, Letter::A]);
        if !d_aa.is_zero() {
            return Err(DgError::ParityObstruction(format!(
                "d(a^2) = {} is nonzero",
                self.format(&d_aa)
            )));
        }
        let mut d_rel = self.leibniz_on_word(&[Letter::A, Letter::U]);
        d_rel = self.add(&d_rel, &self.leibniz_on_word(&[Letter::U, Letter::A]));
        if !d_rel.is_zero() {
            return Err(DgError::ParityObstruction(format!(
                "d(au + ua + v) = {} is nonzero",
                self.format(&d_rel)
            )));
        }
        Ok(())
    }

    pub fn format(&self, x: &DgElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &x.terms {
            let mut ms = String::new();
            if m.t != 0 {
                ms.push_str(&format!("v^{}", m.t));
            }
            if m.a {
                ms.push('a');
            }
            match m.m {
                0 => {}
                1 => ms.push('u'),
                k => ms.push_str(&format!("u^{k}")),
            }
            let s = match (*c == self.coeffs.one(), ms.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => ms,
                (false, true) => crate::scalar::format_scalar(c),
                (false, false) => format!("{}{ms}", crate::scalar::format_scalar(c)),
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for DgAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A over F_{} with |u| = {}, |a| = {}, |v| = {}, d of degree -{}",
            self.p(),
            self.i,
            self.a_degree(),
            self.v_degree(),
            self.n
        )
    }
}

/// Letters of the free algebra on `a`, `u` and the central unit `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    U,
    V,
}

/// Which redex the rewriting engine contracts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Normal form of a word by the rules `aa -> 0` and `ua -> -au - v`, applied
/// one redex at a time. Independent of the closed-form product.
pub fn rewrite(alg: &DgAlgebra, word: &[Letter], strategy: Strategy) -> DgElem {
    let c = alg.coeffs();
    // a pending word: coefficient, power of v, letters in {a, u}
    let vpow = word.iter().filter(|l| **l == Letter::V).count() as i64;
    let letters: Vec<Letter> = word.iter().copied().filter(|l| *l != Letter::V).collect();
    let mut stack = vec![(c.one(), vpow, letters)];
    let mut out = DgElem::zero();
    while let Some((coef, t, w)) = stack.pop() {
        let redexes: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&k| {
                matches!(
                    (w[k], w[k + 1]),
                    (Letter::A, Letter::A) | (Letter::U, Letter::A)
                )
            })
            .collect();
        let pick = match strategy {
            Strategy::Leftmost => redexes.first(),
            Strategy::Rightmost => redexes.last(),
        };
        match pick {
            None => {
                let a = w.first() == Some(&Letter::A);
                let m = w.len() as u32 - a as u32;
                out.add_term(c, &coef, alg.norm(Mono::new(t, a, m)));
            }
            Some(&k) => {
                if w[k] == Letter::A {
                    continue;
                }
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                stack.push((c.neg(&coef), t, swapped));
                let mut dropped = w.clone();
                dropped.drain(k..k + 2);
                stack.push((c.neg(&coef), t + 1, dropped));
            }
        }
    }
    out
}

/// Every word of length at most `max_len` over `{a, u}` rewrites to the same
/// normal form under both strategies and agrees with the closed-form product.
pub fn check_confluence(alg: &DgAlgebra, max_len: usize) -> Result<(), Vec<Letter>> {
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for l in [Letter::A, Letter::U] {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        for w in &next {
            let left = rewrite(alg, w, Strategy::Leftmost);
            let right = rewrite(alg, w, Strategy::Rightmost);
            let closed = w.iter().fold(alg.one(), |acc, l| {
                let g = match l {
                    Letter::A => alg.gen_a(),
                    Letter::U => alg.gen_u(),
                    Letter::V => alg.gen_v(1),
                };
                alg.mul_raw(&acc, &g)
            });
            if left != right || left != closed {
                return Err(w.clone());
            }
        }
        words = next;
    }
    Ok(())
}
