//! Exact linear algebra over `Z/m` and `Q`.
//!
//! Subgroups of `(Z/m)^k` are kept in Howell form, which is canonical and has the
//! property that the rows vanishing on a column prefix span exactly the elements of
//! the subgroup vanishing on that prefix. Kernels and preimages are read off
//! augmented Howell forms; finite abelian quotients are decomposed into cyclic
//! summands by diagonalizing their relation matrix.

use num_traits::Zero;

use crate::scalar::{Coeffs, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(c: &Coeffs, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = c.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(c: &Coeffs, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| c.add(x, y)).collect()
}

pub fn sub_vec(c: &Coeffs, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| c.sub(x, y)).collect()
}

pub fn scale_vec(c: &Coeffs, s: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c.mul(s, x)).collect()
}

/// `acc += s * a`
pub fn axpy(c: &Coeffs, acc: &mut [Scalar], s: &Scalar, a: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x = c.add(x, &c.mul(s, y));
        }
    }
}

fn pivot_col(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Canonical Howell form of the row span. Zero rows are dropped.
pub fn howell_form(c: &Coeffs, rows: Vec<Vector>, ncols: usize) -> Vec<Vector> {
    let mut a: Vec<Vector> = rows.into_iter().filter(|r| !is_zero_vec(r)).collect();
    for r in &a {
        debug_assert_eq!(r.len(), ncols);
    }
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let e = c.gcdex(&a[r][col], &a[i][col]);
            let (top, bot) = (a[r].clone(), a[i].clone());
            let mut nt = scale_vec(c, &e.s, &top);
            axpy(c, &mut nt, &e.t, &bot);
            let mut nb = scale_vec(c, &e.u, &top);
            axpy(c, &mut nb, &e.v, &bot);
            a[r] = nt;
            a[i] = nb;
        }
        let w = c.normalizing_unit(&a[r][col]);
        a[r] = scale_vec(c, &w, &a[r]);
        let pivot = a[r][col];
        for k in 0..r {
            if a[k][col].is_zero() {
                continue;
            }
            let q = c.reduction_quotient(&a[k][col], &pivot);
            let row = a[r].clone();
            axpy(c, &mut a[k], &c.neg(&q), &row);
        }
        let ann = c.annihilator(&pivot);
        if !ann.is_zero() {
            let extra = scale_vec(c, &ann, &a[r]);
            if !is_zero_vec(&extra) {
                a.push(extra);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// A subgroup (submodule) of `R^ncols` for `R = Z/m` or `Q`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    coeffs: Coeffs,
    ncols: usize,
    rows: Vec<Vector>,
}

impl Span {
    pub fn new(c: &Coeffs, rows: Vec<Vector>, ncols: usize) -> Self {
        Span {
            coeffs: *c,
            ncols,
            rows: howell_form(c, rows, ncols),
        }
    }

    pub fn zero(c: &Coeffs, ncols: usize) -> Self {
        Span {
            coeffs: *c,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn full(c: &Coeffs, ncols: usize) -> Self {
        Span::new(
            c,
            (0..ncols).map(|i| unit_vec(c, ncols, i)).collect(),
            ncols,
        )
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical remainder of `v` modulo the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let c = &self.coeffs;
        let mut v = v.to_vec();
        for row in &self.rows {
            let j = pivot_col(row).expect("howell rows are nonzero");
            if v[j].is_zero() {
                continue;
            }
            let q = c.reduction_quotient(&v[j], &row[j]);
            axpy(c, &mut v, &c.neg(&q), row);
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Span) -> Span {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Span::new(&self.coeffs, rows, self.ncols)
    }

    pub fn with_rows(&self, extra: impl IntoIterator<Item = Vector>) -> Span {
        let mut rows = self.rows.clone();
        rows.extend(extra);
        Span::new(&self.coeffs, rows, self.ncols)
    }

    /// Intersection, computed as a kernel of the difference map.
    pub fn intersect(&self, other: &Span) -> Span {
        let c = &self.coeffs;
        let n = self.ncols;
        // [x | x] for x in self, [y | 0] for y in other: prefix-zero rows are x = -y.
        let mut rows = Vec::new();
        for x in &self.rows {
            let mut r = x.clone();
            r.extend(x.iter().cloned());
            rows.push(r);
        }
        for y in &other.rows {
            let mut r = y.clone();
            r.extend(zero_vec(n));
            rows.push(r);
        }
        let h = howell_form(c, rows, 2 * n);
        let inter = h
            .into_iter()
            .filter(|r| is_zero_vec(&r[..n]))
            .map(|r| r[n..].to_vec())
            .collect();
        Span::new(c, inter, n)
    }

    /// Cardinality of the subgroup (finite coefficient rings only).
    pub fn cardinality(&self) -> Option<u128> {
        let m = self.coeffs.modulus();
        if m == 0 {
            return None;
        }
        let mut card: u128 = 1;
        for row in &self.rows {
            let j = pivot_col(row).unwrap();
            let p = *row[j].numer() as u64;
            card = card.checked_mul((m / p) as u128)?;
        }
        Some(card)
    }

    /// Number of Howell rows; equals the dimension over a field.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Size measure: cardinality over `Z/m`, dimension over `Q`.
    pub fn measure(&self) -> Measure {
        match self.cardinality() {
            Some(c) => Measure::Card(c),
            None if self.coeffs.is_rational() => Measure::Dim(self.rank()),
            None => Measure::Card(u128::MAX),
        }
    }
}

/// Size of a finite group or a rational vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Card(u128),
    Dim(usize),
}

impl Measure {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Measure::Card(1) | Measure::Dim(0))
    }

    /// Size of a quotient `self / sub`.
    pub fn quotient(&self, sub: &Measure) -> Measure {
        match (self, sub) {
            (Measure::Card(a), Measure::Card(b)) => Measure::Card(a / b),
            (Measure::Dim(a), Measure::Dim(b)) => Measure::Dim(a - b),
            _ => panic!("incompatible measures"),
        }
    }

    pub fn product(&self, other: &Measure) -> Measure {
        match (self, other) {
            (Measure::Card(a), Measure::Card(b)) => Measure::Card(a.saturating_mul(*b)),
            (Measure::Dim(a), Measure::Dim(b)) => Measure::Dim(a + b),
            _ => panic!("incompatible measures"),
        }
    }

    /// `log_unit(self)` when it is an exact nonnegative integer.
    pub fn length_over(&self, unit: &Measure) -> Option<usize> {
        match (self, unit) {
            (Measure::Card(a), Measure::Card(u)) => {
                if *u < 2 {
                    return (*a == 1).then_some(0);
                }
                let mut k = 0;
                let mut x = 1u128;
                while x < *a {
                    x = x.checked_mul(*u)?;
                    k += 1;
                }
                (x == *a).then_some(k)
            }
            (Measure::Dim(a), Measure::Dim(u)) => {
                if *u == 0 {
                    return (*a == 0).then_some(0);
                }
                (a % u == 0).then_some(a / u)
            }
            _ => None,
        }
    }
}

/// Generators of the kernel of `x -> sum_j x_j images[j]` modulo `relations`,
/// as a span in `R^{images.len()}`.
pub fn kernel(c: &Coeffs, images: &[Vector], relations: &Span, target_dim: usize) -> Span {
    let nsrc = images.len();
    let mut rows = Vec::with_capacity(nsrc + relations.rank());
    for (j, img) in images.iter().enumerate() {
        let mut r = img.clone();
        r.extend(unit_vec(c, nsrc, j));
        rows.push(r);
    }
    for rel in relations.rows() {
        let mut r = rel.clone();
        r.extend(zero_vec(nsrc));
        rows.push(r);
    }
    let h = howell_form(c, rows, target_dim + nsrc);
    let ker = h
        .into_iter()
        .filter(|r| is_zero_vec(&r[..target_dim]))
        .map(|r| r[target_dim..].to_vec())
        .collect();
    Span::new(c, ker, nsrc)
}

/// Precomputed solver for `sum_j x_j images[j] = target (mod relations)`.
#[derive(Clone, Debug)]
pub struct Solver {
    coeffs: Coeffs,
    target_dim: usize,
    nsrc: usize,
    rows: Vec<Vector>,
}

impl Solver {
    pub fn new(c: &Coeffs, images: &[Vector], relations: &Span, target_dim: usize) -> Self {
        let nsrc = images.len();
        let mut rows = Vec::new();
        for (j, img) in images.iter().enumerate() {
            let mut r = img.clone();
            r.extend(unit_vec(c, nsrc, j));
            rows.push(r);
        }
        for rel in relations.rows() {
            let mut r = rel.clone();
            r.extend(zero_vec(nsrc));
            rows.push(r);
        }
        let rows = howell_form(c, rows, target_dim + nsrc)
            .into_iter()
            .filter(|r| !is_zero_vec(&r[..target_dim]))
            .collect();
        Solver {
            coeffs: *c,
            target_dim,
            nsrc,
            rows,
        }
    }

    pub fn solve(&self, target: &[Scalar]) -> Option<Vector> {
        let c = &self.coeffs;
        let mut v = target.to_vec();
        v.extend(zero_vec(self.nsrc));
        for row in &self.rows {
            let j = pivot_col(row).unwrap();
            if v[j].is_zero() {
                continue;
            }
            let q = c.reduction_quotient(&v[j], &row[j]);
            axpy(c, &mut v, &c.neg(&q), row);
        }
        if !is_zero_vec(&v[..self.target_dim]) {
            return None;
        }
        Some(v[self.target_dim..].iter().map(|x| c.neg(x)).collect())
    }
}

pub fn solve(c: &Coeffs, images: &[Vector], relations: &Span, target: &[Scalar]) -> Option<Vector> {
    Solver::new(c, images, relations, target.len()).solve(target)
}

/// Diagonal form `U M V = D` of a relation matrix; returns the diagonal (length
/// `ncols`, zero-padded), `V` and `V^{-1}`.
pub fn diagonalize(
    c: &Coeffs,
    rows: &[Vector],
    ncols: usize,
) -> (Vec<Scalar>, Vec<Vector>, Vec<Vector>) {
    let mut m: Vec<Vector> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let mut v: Vec<Vector> = (0..ncols).map(|i| unit_vec(c, ncols, i)).collect();
    let mut vinv = v.clone();
    let nrows = m.len();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_zero())
        else {
            break;
        };
        m.swap(t, pi);
        if pj != t {
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            vinv.swap(t, pj);
        }
        loop {
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let e = c.gcdex(&m[t][t], &m[i][t]);
                let (top, bot) = (m[t].clone(), m[i].clone());
                let mut nt = scale_vec(c, &e.s, &top);
                axpy(c, &mut nt, &e.t, &bot);
                let mut nb = scale_vec(c, &e.u, &top);
                axpy(c, &mut nb, &e.v, &bot);
                m[t] = nt;
                m[i] = nb;
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let e = c.gcdex(&m[t][t], &m[t][j]);
                col_op(c, &mut m, t, j, &e);
                col_op(c, &mut v, t, j, &e);
                let (rt, rj) = (vinv[t].clone(), vinv[j].clone());
                let mut nt = scale_vec(c, &e.v, &rt);
                axpy(c, &mut nt, &c.neg(&e.u), &rj);
                let mut nj = scale_vec(c, &c.neg(&e.t), &rt);
                axpy(c, &mut nj, &e.s, &rj);
                vinv[t] = nt;
                vinv[j] = nj;
            }
            if (t + 1..nrows).all(|i| m[i][t].is_zero()) {
                break;
            }
        }
        t += 1;
    }
    let diag = (0..ncols)
        .map(|i| if i < nrows { m[i][i] } else { Scalar::zero() })
        .collect();
    (diag, v, vinv)
}

fn col_op(c: &Coeffs, m: &mut [Vector], t: usize, j: usize, e: &crate::scalar::Gcdex) {
    for row in m.iter_mut() {
        let (a, b) = (row[t], row[j]);
        row[t] = c.add(&c.mul(&e.s, &a), &c.mul(&e.t, &b));
        row[j] = c.add(&c.mul(&e.u, &a), &c.mul(&e.v, &b));
    }
}

/// Decomposition of `<gens> / sub` (inside `R^ambient`) into cyclic summands.
#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    coeffs: Coeffs,
    sub: Span,
    solver: Solver,
    v: Vec<Vector>,
    keep: Vec<usize>,
    /// Generators of the cyclic summands, as ambient vectors.
    pub basis: Vec<Vector>,
    /// Additive order of each summand (`0` means a free `Q`-line).
    pub orders: Vec<u64>,
}

impl CyclicDecomposition {
    pub fn new(c: &Coeffs, gens: &[Vector], sub: &Span) -> Self {
        let ambient = sub.ncols();
        let r = gens.len();
        let rel = kernel(c, gens, sub, ambient);
        let (diag, v, vinv) = diagonalize(c, rel.rows(), r);
        let mut basis = Vec::new();
        let mut orders = Vec::new();
        let mut keep = Vec::new();
        for i in 0..r {
            let order = if c.is_rational() {
                if diag[i].is_zero() {
                    0
                } else {
                    1
                }
            } else {
                let m = c.modulus();
                let d = *diag[i].numer() as u64;
                num_integer::gcd(d, m)
            };
            if order == 1 {
                continue;
            }
            let mut b = zero_vec(ambient);
            for (j, g) in gens.iter().enumerate() {
                axpy(c, &mut b, &vinv[i][j], g);
            }
            basis.push(sub.reduce(&b));
            orders.push(order);
            keep.push(i);
        }
        let solver = Solver::new(c, gens, sub, ambient);
        CyclicDecomposition {
            coeffs: *c,
            sub: sub.clone(),
            solver,
            v,
            keep,
            basis,
            orders,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `z` in the cyclic basis, or `None` if `z` is outside `<gens> + sub`.
    pub fn coords(&self, z: &[Scalar]) -> Option<Vector> {
        let c = &self.coeffs;
        let x = self.solver.solve(z)?;
        let mut out = Vec::with_capacity(self.keep.len());
        for (slot, &i) in self.keep.iter().enumerate() {
            let mut y = Scalar::zero();
            for (j, xj) in x.iter().enumerate() {
                y = c.add(&y, &c.mul(xj, &self.v[j][i]));
            }
            out.push(c.reduce_mod(
                &y,
                if self.orders[slot] == 0 {
                    1
                } else {
                    self.orders[slot]
                },
            ));
        }
        Some(out)
    }

    /// Ambient vector with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> Vector {
        let c = &self.coeffs;
        let mut z = zero_vec(self.sub.ncols());
        for (b, k) in self.basis.iter().zip(coords) {
            axpy(c, &mut z, k, b);
        }
        z
    }

    pub fn measure(&self) -> Measure {
        if self.coeffs.is_rational() {
            Measure::Dim(self.orders.len())
        } else {
            Measure::Card(self.orders.iter().map(|&o| o as u128).product())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &Coeffs, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| c.from_int(x)).collect()
    }

    #[test]
    fn howell_over_z4_keeps_annihilator_rows() {
        let c = Coeffs::modular(4);
        // span of (2, 1): contains (0, 2)
        let s = Span::new(&c, vec![v(&c, &[2, 1])], 2);
        assert!(s.contains(&v(&c, &[0, 2])));
        assert_eq!(s.cardinality(), Some(4));
        assert!(!s.contains(&v(&c, &[0, 1])));
    }

    #[test]
    fn howell_is_canonical() {
        let c = Coeffs::modular(4);
        let a = Span::new(&c, vec![v(&c, &[2, 1]), v(&c, &[0, 2])], 2);
        let b = Span::new(&c, vec![v(&c, &[2, 3])], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_doubling_on_z4() {
        let c = Coeffs::modular(4);
        let k = kernel(&c, &[v(&c, &[2])], &Span::zero(&c, 1), 1);
        assert_eq!(k.cardinality(), Some(2));
        assert!(k.contains(&v(&c, &[2])));
    }

    #[test]
    fn solve_over_rationals() {
        let q = Coeffs::rationals();
        let imgs = vec![v(&q, &[1, 1]), v(&q, &[1, -1])];
        let x = solve(&q, &imgs, &Span::zero(&q, 2), &v(&q, &[3, 1])).unwrap();
        assert_eq!(x, v(&q, &[2, 1]));
    }

    #[test]
    fn cyclic_decomposition_of_z2_plus_z4() {
        let c = Coeffs::modular(4);
        // (Z/4)^2 / <(2,0)> = Z/2 + Z/4
        let gens = vec![v(&c, &[1, 0]), v(&c, &[0, 1])];
        let sub = Span::new(&c, vec![v(&c, &[2, 0])], 2);
        let d = CyclicDecomposition::new(&c, &gens, &sub);
        let mut o = d.orders.clone();
        o.sort();
        assert_eq!(o, vec![2, 4]);
        assert_eq!(d.measure(), Measure::Card(8));
        let z = v(&c, &[1, 3]);
        let k = d.coords(&z).unwrap();
        assert!(sub.contains(&sub_vec(&c, &d.element(&k), &z)));
    }

    #[test]
    fn diagonalize_all_ones_mod_2() {
        // used to bounce between row and column moves forever
        let c = Coeffs::modular(2);
        let rows = vec![v(&c, &[1, 1, 1]), v(&c, &[1, 1, 1]), v(&c, &[0, 1, 1])];
        let (diag, _, _) = diagonalize(&c, &rows, 3);
        assert_eq!(diag.iter().filter(|d| !d.is_zero()).count(), 2);
    }

    #[test]
    fn intersection() {
        let c = Coeffs::modular(5);
        let a = Span::new(&c, vec![v(&c, &[1, 0, 0]), v(&c, &[0, 1, 0])], 3);
        let b = Span::new(&c, vec![v(&c, &[0, 1, 0]), v(&c, &[0, 0, 1])], 3);
        let i = a.intersect(&b);
        assert_eq!(i.rank(), 1);
        assert!(i.contains(&v(&c, &[0, 3, 0])));
    }
}
