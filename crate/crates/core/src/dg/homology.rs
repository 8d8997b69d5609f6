use std::collections::{BTreeMap, HashMap};

use super::algebra::{DgElem, Mono};
use super::module::{DgMap, DgModule, ModElem};
use crate::error::DgError;
use crate::linalg::{kernel, Solver, Span, Vector};
use crate::scalar::Scalar;
use num_traits::Zero;

/// Closed range of internal degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Cycles are taken up to weight `W - PAD`, boundaries from sources up to weight `W`.
pub const PAD: u32 = 2;

/// Smallest weight cutoff accepted for a window.
pub fn needed_weight(window: Window) -> u32 {
    window.width().max(0) as u32 + 2 * PAD
}

/// Monomial basis `e_j v^t a^e u^m` of a degree slice, `m <= w`.
#[derive(Clone, Debug)]
struct SliceSpace {
    basis: Vec<(usize, Mono)>,
    index: HashMap<(usize, Mono), usize>,
}

fn slice_basis(module: &DgModule, degree: i64, w: u32) -> Vec<(usize, Mono)> {
    let alg = module.algebra();
    let vd = alg.v_degree();
    let mut out = Vec::new();
    for (j, g) in module.degrees().iter().enumerate() {
        for a in [false, true] {
            for m in 0..=w {
                let rest = degree - g - if a { alg.a_degree() } else { 0 } - m as i64 * alg.i;
                let t = if vd == 0 {
                    if rest != 0 {
                        continue;
                    }
                    0
                } else {
                    if rest.rem_euclid(vd) != 0 {
                        continue;
                    }
                    rest / vd
                };
                out.push((j, Mono::new(t, a, m)));
            }
        }
    }
    out
}

impl SliceSpace {
    fn new(module: &DgModule, degree: i64, w: u32) -> Self {
        let basis = slice_basis(module, degree, w);
        let index = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        SliceSpace { basis, index }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectorize(&self, module: &DgModule, x: &ModElem) -> Option<Vector> {
        let c = module.algebra().coeffs();
        let mut v = vec![c.zero(); self.dim()];
        for (j, xj) in x.iter().enumerate() {
            for (m, s) in xj.terms() {
                let k = *self.index.get(&(j, *m))?;
                v[k] = c.add(&v[k], s);
            }
        }
        Some(v)
    }

    fn element(&self, module: &DgModule, v: &[Scalar]) -> ModElem {
        let c = module.algebra().coeffs();
        let mut out = module.zero_elem();
        for (k, s) in v.iter().enumerate() {
            let (j, m) = self.basis[k];
            out[j].add_term(c, s, m);
        }
        out
    }
}

/// Homology in one degree: representatives of a basis and the boundary span.
#[derive(Clone, Debug)]
pub struct HomologySlice {
    pub degree: i64,
    reps: Vec<ModElem>,
    space: SliceSpace,
    boundaries: Span,
    solver: Solver,
}

impl HomologySlice {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[ModElem] {
        &self.reps
    }

    fn is_boundary(&self, module: &DgModule, x: &ModElem) -> Option<bool> {
        Some(self.boundaries.contains(&self.space.vectorize(module, x)?))
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn coords(&self, module: &DgModule, x: &ModElem) -> Option<Vector> {
        self.solver.solve(&self.space.vectorize(module, x)?)
    }
}

/// Truncated homology of a semifree module over a window of degrees.
#[derive(Clone, Debug)]
pub struct Homology {
    module: DgModule,
    window: Window,
    weight: u32,
    slices: BTreeMap<i64, HomologySlice>,
}

fn max_diff_weight(module: &DgModule) -> u32 {
    let r = module.rank();
    let mut w = 0;
    for j in 0..r {
        for i in 0..r {
            w = w.max(module.diff_entry(j, i).max_weight());
        }
    }
    w
}

impl Homology {
    pub fn compute(module: &DgModule, window: Window, weight: u32) -> Result<Self, DgError> {
        let alg = module.algebra();
        let needed = needed_weight(window);
        if weight < needed || weight > alg.weight_bound {
            return Err(DgError::WindowTooWideForWeightBound {
                width: window.width(),
                needed: needed.max(weight),
                bound: alg.weight_bound,
            });
        }
        let c = *alg.coeffs();
        let full = weight + max_diff_weight(module) + 4;
        let n = alg.n;
        let mut slices = BTreeMap::new();
        for degree in window.degrees() {
            let space = SliceSpace::new(module, degree, full);
            let below = SliceSpace::new(module, degree - n, full);
            let low = slice_basis(module, degree, weight - PAD);
            let low_vecs: Vec<ModElem> = low
                .iter()
                .map(|(j, m)| module.gen_times(*j, DgElem::mono(c.one(), *m)))
                .collect();
            let images: Vec<Vector> = low_vecs
                .iter()
                .map(|x| {
                    below
                        .vectorize(module, &module.d(x))
                        .expect("weight cutoff too small")
                })
                .collect();
            let z = kernel(&c, &images, &Span::zero(&c, below.dim()), below.dim());
            let cycles: Vec<Vector> = z
                .rows()
                .iter()
                .map(|coef| {
                    let mut acc = module.zero_elem();
                    for (k, s) in coef.iter().enumerate() {
                        if !s.is_zero() {
                            acc = module.add(&acc, &module.scale(s, &low_vecs[k]));
                        }
                    }
                    space.vectorize(module, &acc).unwrap()
                })
                .collect();
            let above = slice_basis(module, degree + n, weight);
            let bounds: Vec<Vector> = above
                .iter()
                .map(|(j, m)| {
                    let x = module.gen_times(*j, DgElem::mono(c.one(), *m));
                    space
                        .vectorize(module, &module.d(&x))
                        .expect("weight cutoff too small")
                })
                .collect();
            let boundaries = Span::new(&c, bounds, space.dim());
            let mut cur = boundaries.clone();
            let mut reps = Vec::new();
            let mut rep_vecs = Vec::new();
            for z in cycles {
                if !cur.contains(&z) {
                    cur = cur.with_rows([z.clone()]);
                    reps.push(space.element(module, &z));
                    rep_vecs.push(z);
                }
            }
            let solver = Solver::new(&c, &rep_vecs, &boundaries, space.dim());
            slices.insert(
                degree,
                HomologySlice {
                    degree,
                    reps,
                    space,
                    boundaries,
                    solver,
                },
            );
        }
        Ok(Homology {
            module: module.clone(),
            window,
            weight,
            slices,
        })
    }

    pub fn module(&self) -> &DgModule {
        &self.module
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn slice(&self, degree: i64) -> Option<&HomologySlice> {
        self.slices.get(&degree)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.slices.get(&degree).map_or(0, HomologySlice::dim)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.slices.iter().map(|(d, s)| (*d, s.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.slices.values().map(HomologySlice::dim).sum()
    }

    /// Rank of multiplication by `x = [u]` out of `degree`; `None` when the
    /// target degree is outside the window.
    pub fn x_rank(&self, degree: i64) -> Option<usize> {
        let alg = self.module.algebra();
        let src = self.slices.get(&degree)?;
        let tgt = self.slices.get(&(degree + alg.i))?;
        let u = alg.gen_u();
        let imgs: Vec<Vector> = src
            .reps
            .iter()
            .map(|z| {
                tgt.space
                    .vectorize(&self.module, &self.module.act(z, &u))
                    .expect("weight cutoff too small")
            })
            .collect();
        let base = tgt.boundaries.rank();
        Some(tgt.boundaries.with_rows(imgs).rank() - base)
    }

    /// Whether `x^2` acts as zero wherever it can be checked.
    pub fn x_squared_zero(&self) -> bool {
        let alg = self.module.algebra();
        let uu = alg.mul_raw(&alg.gen_u(), &alg.gen_u());
        self.slices
            .iter()
            .all(|(d, s)| match self.slices.get(&(d + 2 * alg.i)) {
                None => true,
                Some(t) => s.reps.iter().all(|z| {
                    t.is_boundary(&self.module, &self.module.act(z, &uu))
                        .unwrap_or(false)
                }),
            })
    }

    /// Whether any class is moved by `x`.
    pub fn x_acts_nontrivially(&self) -> bool {
        self.window
            .degrees()
            .any(|d| self.x_rank(d).unwrap_or(0) > 0)
    }

    /// `ker x = im x` at every degree where both sides are visible.
    pub fn is_free_over_x(&self) -> bool {
        let i = self.module.algebra().i;
        self.window.degrees().all(|d| {
            let (Some(out), Some(inc)) = (self.x_rank(d), self.x_rank(d - i)) else {
                return true;
            };
            self.dim(d) - out == inc
        })
    }

    /// Number of free `k[x]/x^2` generators per period of `v`.
    pub fn free_rank(&self) -> Option<usize> {
        if !self.is_free_over_x() {
            return None;
        }
        let vd = self.module.algebra().v_degree().abs();
        let degrees: Vec<i64> = if vd == 0 {
            self.window.degrees().collect()
        } else {
            if self.window.width() + 1 < vd {
                return None;
            }
            (self.window.lo..self.window.lo + vd).collect()
        };
        let mut total = 0;
        for d in degrees {
            total += self.x_rank(d)?;
        }
        Some(total)
    }

    /// Matrix of `H(f)` from `degree` to the same degree, columns indexed by
    /// source representatives.
    pub fn induced(
        &self,
        f: &DgMap,
        target: &Homology,
        degree: i64,
    ) -> Result<Vec<Vector>, DgError> {
        let (Some(src), Some(tgt)) = (self.slices.get(&degree), target.slices.get(&degree)) else {
            return Ok(Vec::new());
        };
        src.reps
            .iter()
            .map(|z| {
                tgt.coords(&target.module, &f.apply(z))
                    .ok_or(DgError::Truncation { degree })
            })
            .collect()
    }
}
