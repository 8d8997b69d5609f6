use std::sync::Arc;

use super::algebra::{DgAlgebra, DgElem};
use crate::error::DgError;

/// An element `sum_j e_j x_j` of a semifree right module.
pub type ModElem = Vec<DgElem>;

/// A semifree right DG module on homogeneous generators `e_j`, with
/// `d(e_j) = sum_i e_i diff[j][i]` and `d(e x) = d(e) x + (-1)^{n|e|} e dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    alg: Arc<DgAlgebra>,
    degrees: Vec<i64>,
    diff: Vec<Vec<DgElem>>,
}

impl DgModule {
    pub fn new(
        alg: Arc<DgAlgebra>,
        degrees: Vec<i64>,
        diff: Vec<Vec<DgElem>>,
    ) -> Result<Self, DgError> {
        let r = degrees.len();
        if diff.len() != r || diff.iter().any(|col| col.len() != r) {
            return Err(DgError::DegreeMismatch {
                row: diff.len(),
                col: r,
                found: 0,
                expected: 0,
            });
        }
        let m = DgModule { alg, degrees, diff };
        for j in 0..r {
            for i in 0..r {
                let x = &m.diff[j][i];
                if x.is_zero() {
                    continue;
                }
                let expected = m.degrees[j] - m.alg.n - m.degrees[i];
                match m.alg.elem_degree(x) {
                    Some(d) if d == expected => {}
                    found => {
                        return Err(DgError::DegreeMismatch {
                            row: i,
                            col: j,
                            found: found.unwrap_or(i64::MIN),
                            expected,
                        })
                    }
                }
            }
        }
        for j in 0..r {
            if !m.d(&m.d(&m.gen(j))).iter().all(DgElem::is_zero) {
                return Err(DgError::NotDifferential(j));
            }
        }
        Ok(m)
    }

    /// Free module with zero differential on the generators.
    pub fn free(alg: Arc<DgAlgebra>, degrees: Vec<i64>) -> Self {
        let r = degrees.len();
        DgModule {
            alg,
            degrees,
            diff: vec![vec![DgElem::zero(); r]; r],
        }
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.alg
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn diff_entry(&self, j: usize, i: usize) -> &DgElem {
        &self.diff[j][i]
    }

    pub fn zero_elem(&self) -> ModElem {
        vec![DgElem::zero(); self.rank()]
    }

    pub fn gen(&self, j: usize) -> ModElem {
        let mut v = self.zero_elem();
        v[j] = self.alg.one();
        v
    }

    /// `e_j x`
    pub fn gen_times(&self, j: usize, x: DgElem) -> ModElem {
        let mut v = self.zero_elem();
        v[j] = x;
        v
    }

    pub fn add(&self, x: &ModElem, y: &ModElem) -> ModElem {
        x.iter().zip(y).map(|(a, b)| self.alg.add(a, b)).collect()
    }

    pub fn scale(&self, s: &crate::scalar::Scalar, x: &ModElem) -> ModElem {
        x.iter().map(|a| self.alg.scale(s, a)).collect()
    }

    /// `x a` for an algebra element `a`.
    pub fn act(&self, x: &ModElem, a: &DgElem) -> ModElem {
        x.iter().map(|c| self.alg.mul_raw(c, a)).collect()
    }

    pub fn d(&self, x: &ModElem) -> ModElem {
        let alg = &self.alg;
        let c = alg.coeffs();
        let mut out = self.zero_elem();
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, alpha) in self.diff[j].iter().enumerate() {
                if !alpha.is_zero() {
                    out[i].add_scaled(c, &c.one(), &alg.mul_raw(alpha, xj));
                }
            }
            let sign = c.sign(alg.n * self.degrees[j]);
            out[j].add_scaled(c, &sign, &alg.d_raw(xj));
        }
        out
    }

    /// Degree of a homogeneous element, `None` if zero or mixed.
    pub fn elem_degree(&self, x: &ModElem) -> Option<i64> {
        let mut found = None;
        for (j, xj) in x.iter().enumerate() {
            for (m, _) in xj.terms() {
                let d = self.degrees[j] + self.alg.degree(m);
                match found {
                    None => found = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        found
    }

    /// `M[j]`: degrees raised by `j`, differential scaled by `(-1)^j`.
    pub fn shift(&self, j: i64) -> DgModule {
        let s = self.alg.coeffs().sign(j);
        DgModule {
            alg: self.alg.clone(),
            degrees: self.degrees.iter().map(|d| d + j).collect(),
            diff: self
                .diff
                .iter()
                .map(|col| col.iter().map(|x| self.alg.scale(&s, x)).collect())
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &DgModule) -> DgModule {
        let r = self.rank();
        let s = other.rank();
        let mut diff = vec![vec![DgElem::zero(); r + s]; r + s];
        for j in 0..r {
            for i in 0..r {
                diff[j][i] = self.diff[j][i].clone();
            }
        }
        for j in 0..s {
            for i in 0..s {
                diff[r + j][r + i] = other.diff[j][i].clone();
            }
        }
        let mut degrees = self.degrees.clone();
        degrees.extend(other.degrees.iter().copied());
        DgModule {
            alg: self.alg.clone(),
            degrees,
            diff,
        }
    }
}

/// A degree-zero map of semifree modules: `f(e_j) = sum_i e'_i matrix[j][i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgMap {
    pub source: DgModule,
    pub target: DgModule,
    pub matrix: Vec<Vec<DgElem>>,
}

impl DgMap {
    /// Checks degrees and `d f = f d` on generators.
    pub fn new(
        source: DgModule,
        target: DgModule,
        matrix: Vec<Vec<DgElem>>,
    ) -> Result<Self, DgError> {
        if matrix.len() != source.rank() || matrix.iter().any(|c| c.len() != target.rank()) {
            return Err(DgError::DegreeMismatch {
                row: target.rank(),
                col: source.rank(),
                found: 0,
                expected: 0,
            });
        }
        for (j, col) in matrix.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let expected = source.degrees[j] - target.degrees[i];
                match source.alg.elem_degree(x) {
                    Some(d) if d == expected => {}
                    found => {
                        return Err(DgError::DegreeMismatch {
                            row: i,
                            col: j,
                            found: found.unwrap_or(i64::MIN),
                            expected,
                        })
                    }
                }
            }
        }
        let f = DgMap {
            source,
            target,
            matrix,
        };
        for j in 0..f.source.rank() {
            let lhs = f.target.d(&f.apply(&f.source.gen(j)));
            let rhs = f.apply(&f.source.d(&f.source.gen(j)));
            if lhs != rhs {
                return Err(DgError::NotChainMap(j));
            }
        }
        Ok(f)
    }

    pub fn zero(source: &DgModule, target: &DgModule) -> Self {
        DgMap {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![DgElem::zero(); target.rank()]; source.rank()],
        }
    }

    pub fn identity(m: &DgModule) -> Self {
        let r = m.rank();
        let matrix = (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| if i == j { m.alg.one() } else { DgElem::zero() })
                    .collect()
            })
            .collect();
        DgMap {
            source: m.clone(),
            target: m.clone(),
            matrix,
        }
    }

    pub fn apply(&self, x: &ModElem) -> ModElem {
        let alg = &self.source.alg;
        let c = alg.coeffs();
        let mut out = self.target.zero_elem();
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, beta) in self.matrix[j].iter().enumerate() {
                if !beta.is_zero() {
                    out[i].add_scaled(c, &c.one(), &alg.mul_raw(beta, xj));
                }
            }
        }
        out
    }

    /// `f[j]` between the shifted modules; the matrix is unchanged.
    pub fn shift(&self, j: i64) -> DgMap {
        DgMap {
            source: self.source.shift(j),
            target: self.target.shift(j),
            matrix: self.matrix.clone(),
        }
    }

    /// Inclusion of `N` into `cone(f)`.
    pub fn cone_inclusion(&self, cone: &DgModule) -> DgMap {
        let s = self.target.rank();
        let matrix = (0..s)
            .map(|j| {
                (0..cone.rank())
                    .map(|i| {
                        if i == j {
                            self.source.alg.one()
                        } else {
                            DgElem::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        DgMap {
            source: self.target.clone(),
            target: cone.clone(),
            matrix,
        }
    }

    /// Projection of `cone(f)` onto `M[n]`.
    pub fn cone_projection(&self, cone: &DgModule) -> DgMap {
        let s = self.target.rank();
        let m = self.source.shift(self.source.alg.n);
        let matrix = (0..cone.rank())
            .map(|j| {
                (0..m.rank())
                    .map(|i| {
                        if j >= s && j - s == i {
                            self.source.alg.one()
                        } else {
                            DgElem::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        DgMap {
            source: cone.clone(),
            target: m,
            matrix,
        }
    }

    /// Generators of `N`, then of `M[n]`; `D(e_j^{M[n]}) = f(e_j) + (-1)^n d_M(e_j)`.
    pub fn cone(&self) -> Result<DgModule, DgError> {
        let alg = self.source.alg.clone();
        let n = alg.n;
        let shifted = self.source.shift(n);
        let s = self.target.rank();
        let r = self.source.rank();
        let mut degrees = self.target.degrees.clone();
        degrees.extend(shifted.degrees.iter().copied());
        let mut diff = vec![vec![DgElem::zero(); s + r]; s + r];
        for j in 0..s {
            for i in 0..s {
                diff[j][i] = self.target.diff[j][i].clone();
            }
        }
        for j in 0..r {
            for i in 0..s {
                diff[s + j][i] = self.matrix[j][i].clone();
            }
            for i in 0..r {
                diff[s + j][s + i] = shifted.diff[j][i].clone();
            }
        }
        DgModule::new(alg, degrees, diff)
    }
}
