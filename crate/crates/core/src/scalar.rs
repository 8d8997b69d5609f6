//! Exact coefficient arithmetic over `Z/m` (`m >= 2`) or the rationals.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Scalars are stored as exact rationals; over `Z/m` they are always integers in `[0, m)`.
pub type Scalar = Ratio<i64>;

/// The coefficient ring: `Z/m` when `modulus >= 2`, `Q` when `modulus == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coeffs {
    modulus: u64,
}

/// Result of an extended gcd step used by echelon and diagonal forms.
///
/// `[s t; u v]` has determinant one and sends `(a, b)` to `(g, 0)`.
#[derive(Clone, Copy, Debug)]
pub struct Gcdex {
    pub g: Scalar,
    pub s: Scalar,
    pub t: Scalar,
    pub u: Scalar,
    pub v: Scalar,
}

impl Coeffs {
    pub fn modular(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Coeffs { modulus }
    }

    pub fn rationals() -> Self {
        Coeffs { modulus: 0 }
    }

    /// `m`, or `0` for the rationals.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.modulus == 0
    }

    pub fn is_field(&self) -> bool {
        self.modulus == 0 || is_prime(self.modulus)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> Scalar {
        if self.modulus == 0 {
            Scalar::from_integer(a)
        } else {
            Scalar::from_integer(a.rem_euclid(self.modulus as i64))
        }
    }

    /// Reduce an arbitrary rational into canonical form. Fails over `Z/m` when the
    /// denominator is not invertible.
    pub fn reduce(&self, a: Scalar) -> Option<Scalar> {
        if self.modulus == 0 {
            return Some(a);
        }
        let m = self.modulus as i64;
        let num = a.numer().rem_euclid(m);
        let den = a.denom().rem_euclid(m);
        let inv = inverse_mod(den, m)?;
        Some(Scalar::from_integer(
            ((num as i128 * inv as i128) % m as i128) as i64,
        ))
    }

    #[inline]
    fn int(a: &Scalar) -> i64 {
        debug_assert!(a.is_integer());
        *a.numer()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if self.modulus == 0 {
            a + b
        } else {
            let m = self.modulus as i64;
            Scalar::from_integer((Self::int(a) + Self::int(b)).rem_euclid(m))
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if self.modulus == 0 {
            a - b
        } else {
            let m = self.modulus as i64;
            Scalar::from_integer((Self::int(a) - Self::int(b)).rem_euclid(m))
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&Scalar::zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if self.modulus == 0 {
            a * b
        } else {
            let m = self.modulus as i128;
            let p = (Self::int(a) as i128 * Self::int(b) as i128).rem_euclid(m);
            Scalar::from_integer(p as i64)
        }
    }

    /// `a * b` reduced modulo `order` instead of the full modulus (used for basis
    /// elements whose additive order is a proper divisor of `m`).
    pub fn reduce_mod(&self, a: &Scalar, order: u64) -> Scalar {
        if self.modulus == 0 {
            *a
        } else {
            Scalar::from_integer(Self::int(a).rem_euclid(order as i64))
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        if self.modulus == 0 {
            !a.is_zero()
        } else {
            Self::int(a).gcd(&(self.modulus as i64)) == 1
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.modulus == 0 {
            if a.is_zero() {
                None
            } else {
                Some(a.recip())
            }
        } else {
            inverse_mod(Self::int(a), self.modulus as i64).map(Scalar::from_integer)
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `(-1)^k` in this ring.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_int(-1)
        }
    }

    /// Additive order of a scalar (`0` meaning infinite).
    pub fn additive_order(&self, a: &Scalar) -> u64 {
        if self.modulus == 0 {
            if a.is_zero() {
                1
            } else {
                0
            }
        } else {
            let m = self.modulus as i64;
            (m / Self::int(a).gcd(&m)) as u64
        }
    }

    /// Extended gcd with a unimodular transform.
    pub fn gcdex(&self, a: &Scalar, b: &Scalar) -> Gcdex {
        let one = self.one();
        let zero = self.zero();
        if self.modulus == 0 {
            if !a.is_zero() {
                Gcdex {
                    g: *a,
                    s: one,
                    t: zero,
                    u: -(b / a),
                    v: one,
                }
            } else {
                Gcdex {
                    g: *b,
                    s: zero,
                    t: one,
                    u: -one,
                    v: zero,
                }
            }
        } else {
            let (ai, bi) = (Self::int(a), Self::int(b));
            if bi == 0 {
                return Gcdex {
                    g: *a,
                    s: one,
                    t: zero,
                    u: zero,
                    v: one,
                };
            }
            if ai == 0 {
                return Gcdex {
                    g: *b,
                    s: zero,
                    t: one,
                    u: self.from_int(-1),
                    v: zero,
                };
            }
            // b already in (a): keep a as the pivot so elimination cannot cycle
            let ga = ai.gcd(&(self.modulus as i64));
            if bi % ga == 0 {
                let q = self.mul(&self.normalizing_unit(a), &self.from_int(bi / ga));
                return Gcdex {
                    g: *a,
                    s: one,
                    t: zero,
                    u: self.neg(&q),
                    v: one,
                };
            }
            let e = ai.extended_gcd(&bi);
            let g = e.gcd;
            Gcdex {
                g: self.from_int(g),
                s: self.from_int(e.x),
                t: self.from_int(e.y),
                u: self.from_int(-(bi / g)),
                v: self.from_int(ai / g),
            }
        }
    }

    /// A unit `w` with `a * w` the canonical associate of `a` (`gcd(a, m)` or `1`).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        if self.modulus == 0 {
            if a.is_zero() {
                Scalar::one()
            } else {
                a.recip()
            }
        } else {
            let m = self.modulus as i64;
            let ai = Self::int(a);
            if ai == 0 {
                return Scalar::one();
            }
            let g = ai.gcd(&m);
            let mg = m / g;
            let base = if mg == 1 {
                1
            } else {
                inverse_mod((ai / g).rem_euclid(mg), mg).unwrap_or(1)
            };
            let mut w = base;
            while w.gcd(&m) != 1 {
                w += mg;
            }
            Scalar::from_integer(w.rem_euclid(m))
        }
    }

    /// Generator of the annihilator ideal of `a`.
    pub fn annihilator(&self, a: &Scalar) -> Scalar {
        if self.modulus == 0 {
            if a.is_zero() {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        } else {
            let m = self.modulus as i64;
            let g = Self::int(a).gcd(&m);
            self.from_int(m / g)
        }
    }

    /// Quotient used when reducing `a` against a normalized pivot `p`, so that
    /// `a - q p` is the canonical remainder.
    pub fn reduction_quotient(&self, a: &Scalar, p: &Scalar) -> Scalar {
        if self.modulus == 0 {
            a / p
        } else {
            Scalar::from_integer(Self::int(a) / Self::int(p))
        }
    }

    /// Every element of `Z/order` (finite case only).
    pub fn elements_mod(&self, order: u64) -> impl Iterator<Item = Scalar> {
        (0..order as i64).map(Scalar::from_integer)
    }
}

impl fmt::Display for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "Q")
        } else {
            write!(f, "Z/{}", self.modulus)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime `p` when `n = p^k` for some `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let mut r = n;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Render a scalar as `a` or `a/b`.
pub fn format_scalar(a: &Scalar) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else if a.is_negative() {
        format!("-{}/{}", a.numer().abs(), a.denom())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcdex_is_unimodular() {
        let c = Coeffs::modular(12);
        for a in 0..12 {
            for b in 0..12 {
                let (a, b) = (c.from_int(a), c.from_int(b));
                let e = c.gcdex(&a, &b);
                let det = c.sub(&c.mul(&e.s, &e.v), &c.mul(&e.t, &e.u));
                assert!(c.is_unit(&det));
                assert_eq!(c.add(&c.mul(&e.s, &a), &c.mul(&e.t, &b)), e.g);
                assert_eq!(c.add(&c.mul(&e.u, &a), &c.mul(&e.v, &b)), c.zero());
            }
        }
    }

    #[test]
    fn normalizing_unit_reaches_gcd() {
        let c = Coeffs::modular(12);
        for a in 1..12 {
            let a = c.from_int(a);
            let w = c.normalizing_unit(&a);
            assert!(c.is_unit(&w));
            let g = (*c.mul(&a, &w).numer()) as u64;
            assert_eq!(12 % g, 0);
        }
    }

    #[test]
    fn rational_inverse() {
        let q = Coeffs::rationals();
        assert_eq!(q.inv(&Scalar::new(2, 3)), Some(Scalar::new(3, 2)));
        assert_eq!(q.reduce(Scalar::new(1, 2)), Some(Scalar::new(1, 2)));
        assert_eq!(
            Coeffs::modular(5).reduce(Scalar::new(1, 2)),
            Some(Scalar::from_integer(3))
        );
        assert_eq!(Coeffs::modular(4).reduce(Scalar::new(1, 2)), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(2), Some(2));
    }
}
