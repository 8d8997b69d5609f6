//! Tate cohomology of cyclic p-groups computed in the stable module category,
//! and the global generating hypothesis test built on it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, Verdict, SCHEMA_VERSION};
use crate::error::GenHypError;
use crate::linalg::{Span, Vector};
use crate::modcat::{FiniteModule, ModuleCategory, ModuleMap, StableHom};
use crate::ring::{build, GradedRing};
use crate::scalar::{is_prime, Scalar};

pub const DEFAULT_WINDOW: (i64, i64) = (-6, 6);

/// `F_p[Z/p^n] = F_p[t]/(t^{p^n})` with `t = g - 1`.
pub fn group_algebra(p: u64, n: u32) -> Result<GradedRing, GenHypError> {
    if !is_prime(p) {
        return Err(GenHypError::NotPrime(p));
    }
    let order = p.pow(n) as usize;
    Ok(build::truncated(p, order, 0, None)?.with_name(format!("F{p}[Z/{order}]")))
}

/// `0 -> X_{a+1} -iota-> P_a -pi-> X_a -> 0` with `P_a` projective.
#[derive(Clone, Debug)]
struct Step {
    iota: ModuleMap,
    pi: ModuleMap,
}

/// The objects `X_j = Omega^j k` for `j` in `[lo, hi]`, with a short exact
/// sequence joining each consecutive pair.
#[derive(Clone, Debug)]
pub struct ShiftChain {
    lo: i64,
    hi: i64,
    objects: BTreeMap<i64, FiniteModule>,
    steps: BTreeMap<i64, Step>,
}

impl ShiftChain {
    pub fn new(
        cat: &ModuleCategory,
        base: FiniteModule,
        lo: i64,
        hi: i64,
    ) -> Result<Self, GenHypError> {
        let mut objects = BTreeMap::new();
        let mut steps = BTreeMap::new();
        objects.insert(0, base);
        for a in 0..hi {
            let (iota, pi) = cat.syzygy(&objects[&a])?;
            objects.insert(a + 1, iota.source.clone());
            steps.insert(a, Step { iota, pi });
        }
        for a in (lo..0).rev() {
            let (iota, pi) = cat.cosyzygy(&objects[&(a + 1)])?;
            objects.insert(a, pi.target.clone());
            steps.insert(a, Step { iota, pi });
        }
        Ok(ShiftChain {
            lo,
            hi,
            objects,
            steps,
        })
    }

    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn object(&self, j: i64) -> &FiniteModule {
        &self.objects[&j]
    }

    /// `Omega g : X_{b+1} -> X_{c+1}` for `g : X_b -> X_c`.
    fn omega(&self, g: &ModuleMap, b: i64, c: i64) -> Result<ModuleMap, GenHypError> {
        let (sb, sc) = (&self.steps[&b], &self.steps[&c]);
        let h = g.compose(&sb.pi)?.lift_through(&sc.pi)?;
        Ok(h.restrict(&sb.iota, &sc.iota)?)
    }

    /// `Omega^{-1} g : X_{b-1} -> X_{c-1}` for `g : X_b -> X_c`.
    fn omega_inv(&self, g: &ModuleMap, b: i64, c: i64) -> Result<ModuleMap, GenHypError> {
        let (sb, sc) = (&self.steps[&(b - 1)], &self.steps[&(c - 1)]);
        let h = sc.iota.compose(g)?.extend_along(&sb.iota)?;
        let down = sc.pi.compose(&h)?;
        let src = &sb.pi.target;
        let cols = (0..src.generators())
            .map(|j| {
                let pre = sb.pi.preimage(&src.gen(j)).expect("cover is surjective");
                down.apply(&pre)
            })
            .collect();
        Ok(ModuleMap::new(src.clone(), sc.pi.target.clone(), cols)?)
    }

    /// `Omega^s g : X_{b+s} -> X_{c+s}`, or `None` when it leaves the chain.
    pub fn shift_map(
        &self,
        g: &ModuleMap,
        b: i64,
        c: i64,
        s: i64,
    ) -> Result<Option<ModuleMap>, GenHypError> {
        let inside = |d: i64| self.lo <= d && d <= self.hi;
        if !inside(b + s) || !inside(c + s) {
            return Ok(None);
        }
        let mut g = g.clone();
        let (mut b, mut c) = (b, c);
        for _ in 0..s.max(0) {
            g = self.omega(&g, b, c)?;
            b += 1;
            c += 1;
        }
        for _ in 0..(-s).max(0) {
            g = self.omega_inv(&g, b, c)?;
            b -= 1;
            c -= 1;
        }
        Ok(Some(g))
    }
}

fn class_rank(stable: &StableHom, maps: &[ModuleMap]) -> usize {
    let c = *stable.hom.source.ring().coeffs();
    let rows: Vec<Vector> = maps
        .iter()
        .map(|m| stable.coords(m).expect("map lies in the hom group"))
        .collect();
    Span::new(&c, rows, stable.decomposition.len()).rank()
}

fn stable_dim(stable: &StableHom) -> usize {
    stable.decomposition.len()
}

/// Shape of `pi_* S` read off in the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TateShape {
    /// `F_p[y^±]`, `|y| = 1`
    GradedField,
    /// `F_p[y^±][x]/(x^2)`, `|x| = 1`, `|y| = 2`
    Exterior,
}

/// `pi_* S = Ĥ(Z/p^n; F_p)` in a window, with products by stable composition.
#[derive(Clone, Debug)]
pub struct TateRing {
    pub p: u64,
    pub n: u32,
    pub window: (i64, i64),
    pub dims: BTreeMap<i64, usize>,
    /// `e_j e_l = c e_{j+l}` on the chosen basis classes
    pub products: BTreeMap<(i64, i64), Scalar>,
    pub shape: TateShape,
    pub ring: GradedRing,
    cat: Arc<ModuleCategory>,
    chain: ShiftChain,
    basis: BTreeMap<i64, ModuleMap>,
}

fn window_ok(window: (i64, i64)) -> Result<(), GenHypError> {
    if window.0 > window.1 || window.0 > 0 || window.1 < 2 {
        return Err(GenHypError::WindowEmpty);
    }
    Ok(())
}

/// Computes `pi_j S = stHom(Omega^j k, k)` and the product table, then checks
/// the graded-field or exterior shape.
pub fn tate_ring(p: u64, n: u32, window: (i64, i64)) -> Result<TateRing, GenHypError> {
    window_ok(window)?;
    if n == 0 {
        return Err(GenHypError::ShapeMismatch(
            "the trivial group has no Tate classes".into(),
        ));
    }
    let algebra = group_algebra(p, n)?;
    let cat = Arc::new(ModuleCategory::new(algebra)?);
    let k = cat.residue_module();
    let (lo, hi) = window;
    let chain = ShiftChain::new(&cat, k.clone(), lo, hi + 1)?;

    let mut dims = BTreeMap::new();
    let mut stables = BTreeMap::new();
    let mut basis = BTreeMap::new();
    for j in lo..=hi {
        let st = cat.stable_hom(chain.object(j), &k)?;
        dims.insert(j, stable_dim(&st));
        if let Some(b) = st.basis().into_iter().next() {
            basis.insert(j, b);
        }
        stables.insert(j, st);
    }
    if let Some((j, d)) = dims.iter().find(|(_, d)| **d != 1) {
        return Err(GenHypError::ShapeMismatch(format!(
            "pi_{j} S has dimension {d}"
        )));
    }

    let mut products = BTreeMap::new();
    for (&l, beta) in &basis {
        for (&j, alpha) in &basis {
            if !(lo..=hi).contains(&(j + l)) {
                continue;
            }
            let Some(shifted) = chain.shift_map(beta, l, 0, j)? else {
                continue;
            };
            let prod = alpha.compose(&shifted)?;
            let coords = stables[&(j + l)]
                .coords(&prod)
                .expect("product lies in the hom group");
            products.insert((j, l), coords[0]);
        }
    }

    let nonzero = |j: i64, l: i64| products.get(&(j, l)).is_some_and(|s| !s.is_zero());
    let x_squared = nonzero(1, 1);
    let expected = |j: i64, l: i64| x_squared || j.rem_euclid(2) == 0 || l.rem_euclid(2) == 0;
    if let Some((&(j, l), _)) = products
        .iter()
        .find(|(&(j, l), s)| s.is_zero() == expected(j, l))
    {
        return Err(GenHypError::ShapeMismatch(format!(
            "product of degrees {j} and {l} is {}",
            if expected(j, l) { "zero" } else { "nonzero" }
        )));
    }
    let (shape, ring) = if x_squared {
        (
            TateShape::GradedField,
            build::truncated(p, 1, 0, Some(("y", 1)))?,
        )
    } else {
        (TateShape::Exterior, build::exterior(p, 1, Some(("y", 2)))?)
    };
    let ring = ring.with_name(format!("tate(Z/{}; F{p})", p.pow(n)));
    Ok(TateRing {
        p,
        n,
        window,
        dims,
        products,
        shape,
        ring,
        cat,
        chain,
        basis,
    })
}

impl TateRing {
    pub fn category(&self) -> &Arc<ModuleCategory> {
        &self.cat
    }

    pub fn chain(&self) -> &ShiftChain {
        &self.chain
    }

    /// Representative of the basis class of `pi_j S`.
    pub fn class(&self, j: i64) -> Option<&ModuleMap> {
        self.basis.get(&j)
    }

    /// `pi_j X = stHom(Omega^j k, X)` for `j` in the window.
    pub fn homotopy(&self, x: &FiniteModule) -> Result<BTreeMap<i64, StableHom>, GenHypError> {
        let (lo, hi) = self.window;
        (lo..=hi)
            .map(|j| Ok((j, self.cat.stable_hom(self.chain.object(j), x)?)))
            .collect()
    }

    /// Ranks of `pi_j X -> pi_{j+1} X`, `phi -> phi . Omega^j(x)`.
    pub fn x_action_ranks(&self, x: &FiniteModule) -> Result<BTreeMap<i64, usize>, GenHypError> {
        let pis = self.homotopy(x)?;
        let xrep = &self.basis[&1];
        let (lo, hi) = self.window;
        let mut out = BTreeMap::new();
        for j in lo..hi {
            let Some(xj) = self.chain.shift_map(xrep, 1, 0, j)? else {
                continue;
            };
            let images = pis[&j]
                .basis()
                .iter()
                .map(|phi| phi.compose(&xj))
                .collect::<Result<Vec<_>, _>>()?;
            out.insert(j, class_rank(&pis[&(j + 1)], &images));
        }
        Ok(out)
    }

    /// Ranks of `pi_j f : pi_j X -> pi_j Y` by postcomposition.
    pub fn induced_ranks(&self, f: &ModuleMap) -> Result<BTreeMap<i64, usize>, GenHypError> {
        let src = self.homotopy(&f.source)?;
        let tgt = self.homotopy(&f.target)?;
        let mut out = BTreeMap::new();
        for (j, st) in &src {
            let images = st
                .basis()
                .iter()
                .map(|phi| f.compose(phi))
                .collect::<Result<Vec<_>, _>>()?;
            out.insert(*j, class_rank(&tgt[j], &images));
        }
        Ok(out)
    }
}

/// `M -f-> N -g-> C -h-> Omega^{-1} M` with `C = coker((iota, f) : M -> I(M) (+) N)`.
#[derive(Clone, Debug)]
pub struct Cofiber {
    pub module: FiniteModule,
    pub g: ModuleMap,
    pub h: ModuleMap,
    pub iota: ModuleMap,
}

pub fn cofiber(cat: &ModuleCategory, f: &ModuleMap) -> Result<Cofiber, GenHypError> {
    let (iota, proj) = cat.cosyzygy(&f.source)?;
    let sum = FiniteModule::direct_sum(&[&iota.target, &f.target])?;
    let cols: Vec<Vector> = iota
        .columns
        .iter()
        .zip(&f.columns)
        .map(|(a, b)| [a.clone(), b.clone()].concat())
        .collect();
    let both = ModuleMap::new(f.source.clone(), sum.clone(), cols)?;
    let q = both.cokernel()?;
    let c = q.target.clone();
    let ni = iota.target.generators();
    let g_cols = (0..f.target.generators()).map(|j| c.gen(ni + j)).collect();
    let g = ModuleMap::new(f.target.clone(), c.clone(), g_cols)?;
    let h_cols = (0..c.generators())
        .map(|j| {
            if j < ni {
                proj.apply(&iota.target.gen(j))
            } else {
                proj.target.zero_elem()
            }
        })
        .collect();
    let h = ModuleMap::new(c.clone(), proj.target.clone(), h_cols)?;
    Ok(Cofiber {
        module: c,
        g,
        h,
        iota,
    })
}

/// Result of the two conditions of the generating hypothesis criterion.
#[derive(Clone, Debug)]
pub struct GghVerdict {
    pub p: u64,
    pub n: u32,
    pub window: (i64, i64),
    pub shape: Option<TateShape>,
    pub condition1: bool,
    pub condition2: bool,
    pub holds: bool,
    pub tate_dims: BTreeMap<i64, usize>,
    pub cofiber_dims: BTreeMap<i64, usize>,
    pub x_ranks: BTreeMap<i64, usize>,
    /// value stated in the literature (p = 3) rather than computed only
    pub literature_value: bool,
    pub classification: Option<Verdict>,
    pub note: Option<String>,
}

impl GghVerdict {
    pub fn to_json(&self) -> Value {
        let keyed = |m: &BTreeMap<i64, usize>| -> Value {
            m.iter()
                .map(|(d, v)| (d.to_string(), json!(v)))
                .collect::<serde_json::Map<_, _>>()
                .into()
        };
        json!({
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "n": self.n,
            "window": [self.window.0, self.window.1],
            "shape": self.shape,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "holds": self.holds,
            "literature_value": self.literature_value,
            "tate_dims": keyed(&self.tate_dims),
            "cofiber_dims": keyed(&self.cofiber_dims),
            "x_ranks": keyed(&self.x_ranks),
            "classification": self.classification.as_ref().map(|v| v.to_json()),
            "note": self.note,
        })
    }
}

/// Per-degree dimensions or ranks.
pub type DegreeTable = BTreeMap<i64, usize>;

/// Condition (2): `x` acts nontrivially on `pi_* C`, `C` the cofiber of `x . S`.
/// Returns the cofiber dims and action ranks alongside.
pub fn condition2(tate: &TateRing) -> Result<(bool, DegreeTable, DegreeTable), GenHypError> {
    if tate.shape != TateShape::Exterior {
        return Err(GenHypError::ShapeMismatch("no exterior factor".into()));
    }
    let x = &tate.basis[&1];
    let cof = cofiber(&tate.cat, x)?;
    let dims = tate
        .homotopy(&cof.module)?
        .iter()
        .map(|(j, st)| (*j, stable_dim(st)))
        .collect();
    let ranks = tate.x_action_ranks(&cof.module)?;
    let holds = ranks.values().any(|r| *r > 0);
    Ok((holds, dims, ranks))
}

pub fn ggh_verdict(p: u64, n: u32, window: (i64, i64)) -> Result<GghVerdict, GenHypError> {
    let base = GghVerdict {
        p,
        n,
        window,
        shape: None,
        condition1: false,
        condition2: false,
        holds: false,
        tate_dims: BTreeMap::new(),
        cofiber_dims: BTreeMap::new(),
        x_ranks: BTreeMap::new(),
        literature_value: p == 3,
        classification: None,
        note: None,
    };
    let tate = match tate_ring(p, n, window) {
        Ok(t) => t,
        Err(GenHypError::ShapeMismatch(msg)) => {
            return Ok(GghVerdict {
                note: Some(msg),
                ..base
            })
        }
        Err(e) => return Err(e),
    };
    let verdict = classify(&tate.ring, 1)?;
    let condition1 = verdict.is_delta;
    let mut out = GghVerdict {
        shape: Some(tate.shape),
        condition1,
        tate_dims: tate.dims.clone(),
        classification: Some(verdict),
        ..base
    };
    if !condition1 {
        return Ok(out);
    }
    match tate.shape {
        TateShape::GradedField => {
            out.condition2 = true;
            out.note = Some("graded field: no exterior factor, condition (2) is vacuous".into());
        }
        TateShape::Exterior => {
            let (holds, dims, ranks) = condition2(&tate)?;
            out.condition2 = holds;
            out.cofiber_dims = dims;
            out.x_ranks = ranks;
        }
    }
    out.holds = out.condition1 && out.condition2;
    Ok(out)
}
