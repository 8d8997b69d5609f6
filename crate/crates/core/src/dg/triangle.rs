use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::algebra::{DgAlgebra, DgElem, Mono};
use super::homology::{Homology, Window};
use super::module::{DgMap, DgModule};
use crate::error::DgError;
use crate::linalg::{zero_vec, Span, Vector};
use crate::ring::{build, GradedRing, RingElement, RingSpec};
use crate::scalar::Scalar;

/// `k[x]/(x^2)` with `|x| = i` over `F_p[v^±]`, `|v| = 3i + n` (ungraded in `v`
/// when `3i + n = 0`): the ring whose projectives the algebra triangulates.
pub fn projective_ring(alg: &DgAlgebra) -> GradedRing {
    let vd = alg.v_degree().abs();
    let period = (vd != 0).then_some(("v", vd));
    build::exterior(alg.p(), alg.i, period).expect("exterior algebra over a prime field")
}

/// A map `sum_j R[s_j] -> sum_i R[t_i]` of free modules over `projective_ring`,
/// `f(e_j) = sum_i e'_i entries[j][i]` with `|entries[j][i]| = s_j - t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub ring: Arc<GradedRing>,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub entries: Vec<Vec<RingElement>>,
}

impl ProjMap {
    pub fn new(
        ring: Arc<GradedRing>,
        source: Vec<i64>,
        target: Vec<i64>,
        entries: Vec<Vec<RingElement>>,
    ) -> Result<Self, DgError> {
        if entries.len() != source.len() || entries.iter().any(|c| c.len() != target.len()) {
            return Err(DgError::NotProjectiveInput(format!(
                "expected a {} x {} matrix",
                target.len(),
                source.len()
            )));
        }
        for (j, col) in entries.iter().enumerate() {
            for (i, r) in col.iter().enumerate() {
                if r.degree != source[j] - target[i] {
                    return Err(DgError::LiftFailure { row: i, col: j });
                }
            }
        }
        Ok(ProjMap {
            ring,
            source,
            target,
            entries,
        })
    }

    /// `unit * x : R[d + i] -> R[d]`.
    pub fn times_x(ring: Arc<GradedRing>, alg: &DgAlgebra, d: i64, unit: i64) -> Self {
        let c = *ring.coeffs();
        let deg = alg.i;
        let mut coeffs = zero_vec(2);
        coeffs[1] = c.from_int(unit);
        let e = ring.element(deg, coeffs);
        ProjMap {
            ring,
            source: vec![d + deg],
            target: vec![d],
            entries: vec![vec![e]],
        }
    }

    pub fn identity(ring: Arc<GradedRing>, degrees: Vec<i64>) -> Self {
        let r = degrees.len();
        let entries = (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| {
                        if i == j {
                            ring.one()
                        } else {
                            ring.zero(degrees[j] - degrees[i])
                        }
                    })
                    .collect()
            })
            .collect();
        ProjMap {
            ring,
            source: degrees.clone(),
            target: degrees,
            entries,
        }
    }

    pub fn zero(ring: Arc<GradedRing>, source: Vec<i64>, target: Vec<i64>) -> Self {
        let entries = source
            .iter()
            .map(|s| target.iter().map(|t| ring.zero(s - t)).collect())
            .collect();
        ProjMap {
            ring,
            source,
            target,
            entries,
        }
    }

    /// Random map between frees of rank at most `max_rank` with generator
    /// degrees in `[-spread, spread]`.
    pub fn random<G: Rng>(
        ring: Arc<GradedRing>,
        rng: &mut G,
        max_rank: usize,
        spread: i64,
    ) -> Self {
        let c = *ring.coeffs();
        let p = c.modulus() as i64;
        let degs = |rng: &mut G| -> Vec<i64> {
            let r = rng.gen_range(1..=max_rank);
            (0..r).map(|_| rng.gen_range(-spread..=spread)).collect()
        };
        let source = degs(rng);
        let target = degs(rng);
        let entries = source
            .iter()
            .map(|s| {
                target
                    .iter()
                    .map(|t| {
                        let deg = s - t;
                        let coeffs: Vector = (0..ring.n())
                            .map(|k| {
                                if ring.in_slice(k, deg) {
                                    c.from_int(rng.gen_range(0..p))
                                } else {
                                    c.zero()
                                }
                            })
                            .collect();
                        ring.element(deg, coeffs)
                    })
                    .collect()
            })
            .collect();
        ProjMap {
            ring,
            source,
            target,
            entries,
        }
    }
}

fn lift_entry(alg: &DgAlgebra, r: &RingElement, row: usize, col: usize) -> Result<DgElem, DgError> {
    let c = alg.coeffs();
    let vd = alg.v_degree();
    let mut out = DgElem::zero();
    for (k, base) in [(0usize, 0i64), (1, alg.i)] {
        let s = &r.coeffs[k];
        if s.is_zero() {
            continue;
        }
        let rest = r.degree - base;
        let t = match vd {
            0 if rest == 0 => 0,
            0 => return Err(DgError::LiftFailure { row, col }),
            _ if rest % vd != 0 => return Err(DgError::LiftFailure { row, col }),
            _ => rest / vd,
        };
        out.add_term(c, s, Mono::new(t, false, k as u32));
    }
    Ok(out)
}

/// Lifts a map of projectives to semifree modules: `1 -> 1`, `x -> u`.
pub fn lift_map(alg: &Arc<DgAlgebra>, f: &ProjMap) -> Result<DgMap, DgError> {
    let expected = projective_ring(alg);
    let unnamed = |r: &GradedRing| RingSpec {
        name: None,
        ..r.to_spec()
    };
    if unnamed(&f.ring) != unnamed(&expected) {
        return Err(DgError::NotProjectiveInput(format!(
            "ring must be {expected}"
        )));
    }
    let source = DgModule::free(alg.clone(), f.source.clone());
    let target = DgModule::free(alg.clone(), f.target.clone());
    let matrix = f
        .entries
        .iter()
        .enumerate()
        .map(|(j, col)| {
            col.iter()
                .enumerate()
                .map(|(i, r)| lift_entry(alg, r, i, j))
                .collect()
        })
        .collect::<Result<Vec<Vec<DgElem>>, DgError>>()?;
    DgMap::new(source, target, matrix)
}

/// Where a triangle `X -> Y -> Z -> X[n]` fails to be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Second,
    Third,
    ShiftedFirst,
}

impl Position {
    pub fn name(&self) -> &'static str {
        match self {
            Position::Second => "B",
            Position::Third => "C",
            Position::ShiftedFirst => "ΣA",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Failure {
    pub degree: i64,
    pub at: Position,
    /// consecutive composite is nonzero (otherwise the ranks disagree)
    pub composite_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub window: Window,
    /// dims of `H(X), H(Y), H(Z), H(X[n])` per degree
    pub dims: BTreeMap<i64, [usize; 4]>,
    pub failures: Vec<Failure>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

/// `X -f-> Y -g-> Z -h-> X[n]` of semifree modules.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub first: DgModule,
    pub second: DgModule,
    pub third: DgModule,
    pub f: DgMap,
    pub g: DgMap,
    pub h: DgMap,
}

fn rank(c: &crate::scalar::Coeffs, cols: &[Vector], dim: usize) -> usize {
    Span::new(c, cols.to_vec(), dim).rank()
}

fn compose(
    c: &crate::scalar::Coeffs,
    second: &[Vector],
    first: &[Vector],
    dim: usize,
) -> Vec<Vector> {
    first
        .iter()
        .map(|col| {
            let mut out = zero_vec(dim);
            for (k, s) in col.iter().enumerate() {
                crate::linalg::axpy(c, &mut out, s, &second[k]);
            }
            out
        })
        .collect()
}

impl Triangle {
    /// The standard triangle `M -> N -> cone(f) -> M[n]`.
    pub fn from_map(f: DgMap) -> Result<Self, DgError> {
        let cone = f.cone()?;
        let g = f.cone_inclusion(&cone);
        let h = f.cone_projection(&cone);
        let g = DgMap::new(g.source, g.target, g.matrix)?;
        let h = DgMap::new(h.source, h.target, h.matrix)?;
        Ok(Triangle {
            first: f.source.clone(),
            second: f.target.clone(),
            third: cone,
            f,
            g,
            h,
        })
    }

    /// Lifts a map of projectives and takes its cone.
    pub fn from_projective_map(alg: &Arc<DgAlgebra>, f: &ProjMap) -> Result<Self, DgError> {
        Self::from_map(lift_map(alg, f)?)
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        self.first.algebra()
    }

    /// `Y -> Z -> X[n] -> Y[n]` with last map `-f[n]`.
    pub fn rotate(&self) -> Triangle {
        let n = self.algebra().n;
        let alg = self.algebra().clone();
        let c = *alg.coeffs();
        let shifted = self.f.shift(n);
        let matrix = shifted
            .matrix
            .iter()
            .map(|col| col.iter().map(|x| alg.scale(&c.from_int(-1), x)).collect())
            .collect();
        let minus = DgMap { matrix, ..shifted };
        Triangle {
            first: self.second.clone(),
            second: self.third.clone(),
            third: self.first.shift(n),
            f: self.g.clone(),
            g: self.h.clone(),
            h: minus,
        }
    }

    /// The same diagram with `h` replaced by zero.
    pub fn with_zero_third_map(&self) -> Triangle {
        let h = DgMap::zero(&self.third, &self.h.target);
        Triangle { h, ..self.clone() }
    }

    /// Checks `im = ker` on homology at `Y`, `Z` and `X[n]` in every degree of the window.
    pub fn verify(&self, window: Window, weight: u32) -> Result<ExactnessReport, DgError> {
        let alg = self.algebra().clone();
        let c = *alg.coeffs();
        let n = alg.n;
        let sf = self.f.shift(n);
        let hx = Homology::compute(&self.first, window, weight)?;
        let hy = Homology::compute(&self.second, window, weight)?;
        let hz = Homology::compute(&self.third, window, weight)?;
        let hxn = Homology::compute(&sf.source, window, weight)?;
        let hyn = Homology::compute(&sf.target, window, weight)?;
        let mut dims = BTreeMap::new();
        let mut failures = Vec::new();
        for d in window.degrees() {
            let fm = hx.induced(&self.f, &hy, d)?;
            let gm = hy.induced(&self.g, &hz, d)?;
            let hm = hz.induced(&self.h, &hxn, d)?;
            let sfm = hxn.induced(&sf, &hyn, d)?;
            let (dx, dy, dz, dxn, dyn_) = (hx.dim(d), hy.dim(d), hz.dim(d), hxn.dim(d), hyn.dim(d));
            dims.insert(d, [dx, dy, dz, dxn]);
            let checks = [
                (Position::Second, &fm, &gm, dy, dz),
                (Position::Third, &gm, &hm, dz, dxn),
                (Position::ShiftedFirst, &hm, &sfm, dxn, dyn_),
            ];
            for (at, into, out, mid, next) in checks {
                let composite = compose(&c, out, into, next);
                let composite_nonzero = composite
                    .iter()
                    .any(|v| v.iter().any(|s: &Scalar| !s.is_zero()));
                let exact = mid - rank(&c, out, next) == rank(&c, into, mid);
                if composite_nonzero || !exact {
                    failures.push(Failure {
                        degree: d,
                        at,
                        composite_nonzero,
                    });
                }
            }
        }
        Ok(ExactnessReport {
            window,
            dims,
            failures,
        })
    }
}
