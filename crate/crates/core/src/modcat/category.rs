use std::sync::Arc;

use rand::Rng;

use super::module::{FiniteModule, ModuleMap};
use crate::error::{ModuleError, RingError};
use crate::linalg::{kernel, zero_vec, CyclicDecomposition, Span, Vector};
use crate::ring::{GradedRing, Ideal, RingElement};

/// Size caps for brute-force fallbacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of candidate maps `iso_test` will try.
    pub iso_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { iso_cap: 4096 }
    }
}

#[derive(Clone, Debug)]
struct Factor {
    idempotent: RingElement,
    /// `|e R / e J|`
    top_card: u128,
    /// Maximal ideal of the factor is principal.
    chain: bool,
    /// A nonzero socle element of `e R`, when the socle is simple.
    socle: Option<Vector>,
}

/// Finite modules over a fixed finite ungraded ring, with cached ring data.
#[derive(Clone, Debug)]
pub struct ModuleCategory {
    ring: Arc<GradedRing>,
    radical: Vec<RingElement>,
    factors: Vec<Factor>,
    qf: bool,
    pub limits: Limits,
}

/// Additive group `Hom_R(M, N)`; a map is stored as its flattened columns.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: FiniteModule,
    pub target: FiniteModule,
    pub span: Span,
    pub zero: Span,
}

impl HomGroup {
    pub fn card(&self) -> u128 {
        let total = super::module::quotient_card(&self.zero).unwrap();
        total / super::module::quotient_card(&self.span).unwrap()
    }

    pub fn flatten(map: &ModuleMap) -> Vector {
        map.columns.iter().flatten().cloned().collect()
    }

    pub fn to_map(&self, v: &[crate::scalar::Scalar]) -> ModuleMap {
        let d = self.target.dim().max(1);
        let cols = if self.target.dim() == 0 {
            vec![Vec::new(); self.source.generators()]
        } else {
            v.chunks(d).map(|c| c.to_vec()).collect()
        };
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), cols)
    }

    /// Additive generators of the group.
    pub fn generators(&self) -> Vec<ModuleMap> {
        self.span
            .rows()
            .iter()
            .filter(|r| !self.zero.contains(r))
            .map(|r| self.to_map(r))
            .collect()
    }
}

/// `Hom(M, N)` modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomGroup,
    /// Maps factoring through a projective, inside the hom ambient space.
    pub projective: Span,
    pub decomposition: CyclicDecomposition,
    pub card: u128,
    /// `log_{|k|} card`, when the ring is local and this is an integer.
    pub length: Option<usize>,
}

impl StableHom {
    /// Coordinates of the stable class of `f`.
    pub fn coords(&self, f: &ModuleMap) -> Option<Vector> {
        self.decomposition.coords(&HomGroup::flatten(f))
    }

    pub fn is_stably_zero(&self, f: &ModuleMap) -> bool {
        self.projective.contains(&HomGroup::flatten(f))
    }

    /// Representatives of a generating set of the stable classes.
    pub fn basis(&self) -> Vec<ModuleMap> {
        self.decomposition
            .basis
            .iter()
            .map(|v| self.hom.to_map(v))
            .collect()
    }

    pub fn from_coords(&self, coords: &[crate::scalar::Scalar]) -> ModuleMap {
        self.hom.to_map(&self.decomposition.element(coords))
    }
}

impl ModuleCategory {
    pub fn new(ring: GradedRing) -> Result<Self, ModuleError> {
        Self::from_arc(Arc::new(ring))
    }

    pub fn from_arc(ring: Arc<GradedRing>) -> Result<Self, ModuleError> {
        if !ring.is_finite_ungraded() {
            return Err(ModuleError::NotFiniteUngraded);
        }
        let radical = ring.radical()?.all_generators(&ring);
        let mut factors = Vec::new();
        let mut qf = true;
        for (f, e) in ring.decompose_with_idempotents()? {
            let j = f.radical()?;
            let whole = Ideal::unit(&f);
            let top_card = card(&whole.measure(&f)) / card(&j.measure(&f));
            let j2 = j.product(&f, &j);
            let chain = card(&j.measure(&f)) / card(&j2.measure(&f)) <= top_card;
            let soc = f.socle()?;
            let simple = card(&soc.measure(&f)) == top_card;
            qf &= simple;
            // transport a socle generator of e R back into R
            let socle = if simple {
                let gens = soc.all_generators(&f);
                gens.first().map(|g| embed_factor_element(&ring, &f, &e, g))
            } else {
                None
            };
            factors.push(Factor {
                idempotent: e,
                top_card,
                chain,
                socle,
            });
        }
        Ok(ModuleCategory {
            ring,
            radical,
            factors,
            qf,
            limits: Limits::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn is_local(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_quasi_frobenius(&self) -> bool {
        self.qf
    }

    /// `|R / J|` for a local ring.
    pub fn residue_card(&self) -> Option<u128> {
        self.is_local().then(|| self.factors[0].top_card)
    }

    pub fn free(&self, rank: usize) -> FiniteModule {
        FiniteModule::free(self.ring.clone(), rank).expect("ring checked at construction")
    }

    /// `R / J`, a simple module when the ring is local.
    pub fn residue_module(&self) -> FiniteModule {
        let rows = self.radical.iter().map(|x| x.coeffs.clone()).collect();
        FiniteModule::new(self.ring.clone(), 1, rows).expect("ring checked at construction")
    }

    fn radical_times(&self, m: &FiniteModule, span: &Span) -> Span {
        let mut elems = Vec::new();
        for z in span.rows() {
            for y in &self.radical {
                elems.push(m.act(&y.coeffs, z));
            }
        }
        m.submodule_span(&elems)
    }

    /// Minimal projective `P -> M`; over a local ring `P` is free of rank `dim M/JM`.
    pub fn projective_cover(&self, m: &FiniteModule) -> Result<ModuleMap, ModuleError> {
        let full = m.relation_span().with_rows(m.additive_gens());
        let mut span = self.radical_times(m, &full);
        let mut picked = Vec::new();
        let mut owner = Vec::new();
        for (fi, f) in self.factors.iter().enumerate() {
            for z in m.additive_gens() {
                let ez = m.act(&f.idempotent.coeffs, &z);
                if !span.contains(&ez) {
                    picked.push(ez);
                    owner.push(fi);
                    span = span.sum(&m.submodule_span(&picked[picked.len() - 1..]));
                }
            }
        }
        let n = self.ring.n();
        let g = picked.len();
        let mut rels = Vec::new();
        if self.factors.len() > 1 {
            let one = self.ring.one();
            for (l, &fi) in owner.iter().enumerate() {
                let comp = self.ring.sub(&one, &self.factors[fi].idempotent);
                let mut v = zero_vec(g * n);
                v[l * n..(l + 1) * n].clone_from_slice(&comp.coeffs);
                rels.push(v);
            }
        }
        let p = FiniteModule::new(self.ring.clone(), g, rels)?;
        ModuleMap::new(p, m.clone(), picked)
    }

    pub fn is_projective(&self, m: &FiniteModule) -> Result<bool, ModuleError> {
        Ok(self.projective_cover(m)?.source.card() == m.card())
    }

    /// Kernel inclusion `Omega M -> P` together with the cover `P -> M`.
    pub fn syzygy(&self, m: &FiniteModule) -> Result<(ModuleMap, ModuleMap), ModuleError> {
        let cover = self.projective_cover(m)?;
        Ok((cover.kernel()?, cover))
    }

    pub fn heller_shift(&self, m: &FiniteModule) -> Result<FiniteModule, ModuleError> {
        Ok(self.syzygy(m)?.0.source)
    }

    /// `{x : J x = 0}` as an additive span in `M`.
    pub fn socle_span(&self, m: &FiniteModule) -> Span {
        let c = self.ring.coeffs();
        let r = self.radical.len();
        if r == 0 {
            return m.relation_span().with_rows(m.additive_gens());
        }
        let d = m.dim();
        let images: Vec<Vector> = m
            .additive_gens()
            .iter()
            .map(|x| {
                self.radical
                    .iter()
                    .flat_map(|y| m.act(&y.coeffs, x))
                    .collect()
            })
            .collect();
        let mut rel = Vec::new();
        for b in 0..r {
            for row in m.relation_span().rows() {
                let mut v = zero_vec(d * r);
                v[b * d..(b + 1) * d].clone_from_slice(row);
                rel.push(v);
            }
        }
        let k = kernel(c, &images, &Span::new(c, rel, d * r), d * r);
        m.relation_span().sum(&k)
    }

    /// `Hom_R(M, N)` by solving for images of generators that kill the relations.
    pub fn hom_group(&self, m: &FiniteModule, n: &FiniteModule) -> HomGroup {
        let c = self.ring.coeffs();
        let g = m.generators();
        let dn = n.dim();
        let rels = m.relations();
        let r = rels.len();
        let nb = self.ring.n();
        let mut zero_rows = Vec::new();
        for j in 0..g {
            for row in n.relation_span().rows() {
                let mut v = zero_vec(g * dn);
                v[j * dn..(j + 1) * dn].clone_from_slice(row);
                zero_rows.push(v);
            }
        }
        let zero = Span::new(c, zero_rows, g * dn);
        if r == 0 {
            let full = zero.with_rows((0..g * dn).map(|i| crate::linalg::unit_vec(c, g * dn, i)));
            return HomGroup {
                source: m.clone(),
                target: n.clone(),
                span: full,
                zero,
            };
        }
        let mut images = Vec::with_capacity(g * dn);
        for j in 0..g {
            for e in n.additive_gens() {
                let img: Vector = rels
                    .iter()
                    .flat_map(|rho| n.act(&rho[j * nb..(j + 1) * nb], &e))
                    .collect();
                images.push(img);
            }
        }
        let mut rel = Vec::new();
        for b in 0..r {
            for row in n.relation_span().rows() {
                let mut v = zero_vec(r * dn);
                v[b * dn..(b + 1) * dn].clone_from_slice(row);
                rel.push(v);
            }
        }
        let k = kernel(c, &images, &Span::new(c, rel, r * dn), r * dn);
        HomGroup {
            source: m.clone(),
            target: n.clone(),
            span: zero.sum(&k),
            zero,
        }
    }

    pub fn stable_hom(&self, m: &FiniteModule, n: &FiniteModule) -> Result<StableHom, ModuleError> {
        if !self.qf {
            return Err(ModuleError::NotQuasiFrobenius);
        }
        let hom = self.hom_group(m, n);
        let pi = self.projective_cover(n)?;
        let through = self.hom_group(m, &pi.source);
        let mut rows = Vec::new();
        for h in through.generators() {
            rows.push(HomGroup::flatten(&pi.compose(&h)?));
        }
        let projective = hom.zero.with_rows(rows);
        let decomposition =
            CyclicDecomposition::new(self.ring.coeffs(), hom.span.rows(), &projective);
        let card = super::module::quotient_card(&projective).unwrap()
            / super::module::quotient_card(&hom.span).unwrap();
        let length = self.residue_card().and_then(|k| {
            crate::linalg::Measure::Card(card).length_over(&crate::linalg::Measure::Card(k))
        });
        Ok(StableHom {
            hom,
            projective,
            decomposition,
            card,
            length,
        })
    }

    fn require_local_qf(&self) -> Result<&Factor, ModuleError> {
        if !self.is_local() {
            return Err(RingError::NotLocal.into());
        }
        if !self.qf {
            return Err(ModuleError::NotQuasiFrobenius);
        }
        Ok(&self.factors[0])
    }

    /// An embedding `M -> R^s` with `s` the socle length of `M` (local QF rings).
    pub fn injective_envelope(&self, m: &FiniteModule) -> Result<ModuleMap, ModuleError> {
        self.require_local_qf()?;
        let c = self.ring.coeffs();
        let r1 = self.free(1);
        let homs = self.hom_group(m, &r1).generators();
        let soc = self.socle_span(m);
        let mut chosen: Vec<ModuleMap> = Vec::new();
        let mut ker = m.relation_span().with_rows(m.additive_gens());
        loop {
            let live = soc.intersect(&ker);
            let Some(z) = live.rows().iter().find(|z| !m.is_zero_elem(z)).cloned() else {
                break;
            };
            let phi = homs
                .iter()
                .find(|phi| !r1.is_zero_elem(&phi.apply(&z)))
                .ok_or_else(|| {
                    ModuleError::Ring(RingError::Unsupported(
                        "no functional detects a socle element".into(),
                    ))
                })?;
            let k = kernel(c, &phi.additive_images(), r1.relation_span(), r1.dim());
            ker = ker.intersect(&m.relation_span().sum(&k));
            chosen.push(phi.clone());
        }
        let s = chosen.len();
        let target = self.free(s);
        let cols = (0..m.generators())
            .map(|j| {
                chosen
                    .iter()
                    .flat_map(|phi| phi.columns[j].clone())
                    .collect()
            })
            .collect();
        let iota = ModuleMap::new(m.clone(), target, cols)?;
        debug_assert!(iota.is_injective());
        Ok(iota)
    }

    /// Envelope `M -> I` and the projection `I -> Omega^{-1} M`.
    pub fn cosyzygy(&self, m: &FiniteModule) -> Result<(ModuleMap, ModuleMap), ModuleError> {
        let iota = self.injective_envelope(m)?;
        let proj = iota.cokernel()?;
        Ok((iota, proj))
    }

    pub fn inverse_heller_shift(&self, m: &FiniteModule) -> Result<FiniteModule, ModuleError> {
        Ok(self.cosyzygy(m)?.1.target)
    }

    /// Sizes `|e J^k M|` for each local factor `e`, until they reach 1.
    fn radical_filtration(&self, m: &FiniteModule) -> Vec<Vec<u128>> {
        let full = m.relation_span().with_rows(m.additive_gens());
        self.factors
            .iter()
            .map(|f| {
                let mut span = m.submodule_span(
                    &full
                        .rows()
                        .iter()
                        .map(|z| m.act(&f.idempotent.coeffs, z))
                        .collect::<Vec<_>>(),
                );
                let mut sizes = Vec::new();
                loop {
                    let s = m.span_card(&span);
                    sizes.push(s);
                    if s == 1 {
                        break;
                    }
                    let next = self.radical_times(m, &span);
                    if next == span {
                        break;
                    }
                    span = next;
                }
                sizes
            })
            .collect()
    }

    /// Decides `M ≅ N`. Over rings whose local factors have principal maximal
    /// ideals the radical filtration is a complete invariant; otherwise falls
    /// back to a search over generator images.
    pub fn iso_test(&self, m: &FiniteModule, n: &FiniteModule) -> Result<bool, ModuleError> {
        if m.ring() != n.ring() {
            return Err(ModuleError::Shape("modules over different rings".into()));
        }
        if m.card() != n.card() || m.additive_invariants() != n.additive_invariants() {
            return Ok(false);
        }
        if self.radical_filtration(m) != self.radical_filtration(n) {
            return Ok(false);
        }
        if self.factors.iter().all(|f| f.chain) {
            return Ok(true);
        }
        let targets = n.elements(self.limits.iso_cap)?;
        let g = m.generators() as u32;
        let total = (targets.len() as u128).checked_pow(g).unwrap_or(u128::MAX);
        if total > self.limits.iso_cap {
            return Err(ModuleError::SizeCapExceeded(total));
        }
        let mut idx = vec![0usize; g as usize];
        loop {
            let cols = idx.iter().map(|&i| targets[i].clone()).collect();
            let f = ModuleMap::new_unchecked(m.clone(), n.clone(), cols);
            if m.relations().iter().all(|r| n.is_zero_elem(&f.apply(r))) && f.is_injective() {
                return Ok(true);
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(false);
                }
                idx[pos] += 1;
                if idx[pos] < targets.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Number of free summands of `M` over a local QF ring: the length of `soc(R) M`.
    pub fn free_rank(&self, m: &FiniteModule) -> Result<usize, ModuleError> {
        let f = self.require_local_qf()?;
        let sigma = f.socle.clone().ok_or(ModuleError::NotQuasiFrobenius)?;
        let elems: Vec<Vector> = m.additive_gens().iter().map(|z| m.act(&sigma, z)).collect();
        let size = m.span_card(&m.submodule_span(&elems));
        crate::linalg::Measure::Card(size)
            .length_over(&crate::linalg::Measure::Card(f.top_card))
            .ok_or_else(|| ModuleError::Shape("socle image is not a vector space".into()))
    }

    /// Isomorphism in the stable category: `M (+) R^a ≅ N (+) R^b` after padding
    /// with free summands (local QF rings).
    pub fn stably_isomorphic(
        &self,
        m: &FiniteModule,
        n: &FiniteModule,
    ) -> Result<bool, ModuleError> {
        let a = self.free_rank(m)?;
        let b = self.free_rank(n)?;
        let mm = FiniteModule::direct_sum(&[m, &self.free(b)])?;
        let nn = FiniteModule::direct_sum(&[n, &self.free(a)])?;
        self.iso_test(&mm, &nn)
    }

    /// `Omega^3 M` stably isomorphic to `M` for every sample (suspension is the identity).
    pub fn heller_cube_check(&self, samples: &[FiniteModule]) -> Result<Vec<bool>, ModuleError> {
        samples
            .iter()
            .map(|m| {
                let mut x = m.clone();
                for _ in 0..3 {
                    x = self.heller_shift(&x)?;
                }
                self.stably_isomorphic(&x, m)
            })
            .collect()
    }

    /// A random finitely presented module with at most `max_gens` generators and
    /// `max_rels` relations.
    pub fn random_module(
        &self,
        rng: &mut impl Rng,
        max_gens: usize,
        max_rels: usize,
    ) -> FiniteModule {
        let g = rng.gen_range(1..=max_gens.max(1));
        let nrel = rng.gen_range(0..=max_rels);
        let n = self.ring.n();
        let rows = (0..nrel)
            .map(|_| {
                (0..g * n)
                    .map(|i| {
                        let o = self.ring.basis()[i % n].order;
                        self.ring.coeffs().from_int(rng.gen_range(0..o) as i64)
                    })
                    .collect()
            })
            .collect();
        FiniteModule::new(self.ring.clone(), g, rows).expect("ring checked at construction")
    }
}

fn card(m: &crate::linalg::Measure) -> u128 {
    match m {
        crate::linalg::Measure::Card(c) => *c,
        crate::linalg::Measure::Dim(_) => panic!("finite ring expected"),
    }
}

/// Image in `R` of an element of the rebuilt factor ring `f ≅ e R`.
fn embed_factor_element(
    ring: &GradedRing,
    f: &GradedRing,
    e: &RingElement,
    x: &RingElement,
) -> Vector {
    if f == ring {
        return x.coeffs.clone();
    }
    // the factor basis is a cyclic basis of e R_0; rebuild it the same way
    let gens: Vec<Vector> = ring
        .slice_gens(0)
        .iter()
        .map(|g| ring.mul_vec(&e.coeffs, g))
        .collect();
    let dec = CyclicDecomposition::new(ring.coeffs(), &gens, &ring.zero_span());
    ring.normalize(dec.element(&x.coeffs))
}
