use std::fmt;
use std::sync::Arc;

use crate::error::{ModuleError, RingError};
use crate::linalg::{
    axpy, is_zero_vec, kernel, unit_vec, zero_vec, CyclicDecomposition, Solver, Span, Vector,
};
use crate::ring::{GradedRing, Ideal};
use crate::scalar::Scalar;

/// `|(Z/m)^dim / span|`, or `None` on overflow.
pub(crate) fn quotient_card(span: &Span) -> Option<u128> {
    let m = span.coeffs().modulus() as u128;
    let mut card: u128 = 1;
    for _ in 0..span.ncols() - span.rank() {
        card = card.checked_mul(m)?;
    }
    for row in span.rows() {
        let p = row.iter().find(|x| **x != Scalar::from_integer(0)).unwrap();
        card = card.checked_mul(*p.numer() as u128)?;
    }
    Some(card)
}

/// A finitely presented module `R^g / Rel` over a finite ungraded ring.
///
/// Elements are vectors of length `g * n` (block `j` holds the ring coefficient
/// of generator `j` in the ring's additive basis); `rel` is the additive closure
/// of the relations, including the additive orders of the ring basis.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: Arc<GradedRing>,
    gens: usize,
    relations: Vec<Vector>,
    rel: Span,
}

impl PartialEq for FiniteModule {
    /// Equal presentations (not isomorphism).
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.rel == other.rel
    }
}

impl FiniteModule {
    pub fn new(
        ring: Arc<GradedRing>,
        gens: usize,
        relations: Vec<Vector>,
    ) -> Result<Self, ModuleError> {
        if !ring.is_finite_ungraded() {
            return Err(ModuleError::NotFiniteUngraded);
        }
        let dim = gens * ring.n();
        if relations.iter().any(|r| r.len() != dim) {
            return Err(ModuleError::Shape(format!(
                "relations must have length {dim}"
            )));
        }
        let relations: Vec<Vector> = relations.into_iter().filter(|r| !is_zero_vec(r)).collect();
        let mut rows = block_order_rows(&ring, gens);
        for r in &relations {
            for k in 0..ring.n() {
                rows.push(act_raw(
                    &ring,
                    gens,
                    &unit_vec(ring.coeffs(), ring.n(), k),
                    r,
                ));
            }
        }
        let rel = Span::new(ring.coeffs(), rows, dim);
        Ok(FiniteModule {
            ring,
            gens,
            relations,
            rel,
        })
    }

    pub fn free(ring: Arc<GradedRing>, gens: usize) -> Result<Self, ModuleError> {
        Self::new(ring, gens, Vec::new())
    }

    pub fn zero(ring: Arc<GradedRing>) -> Result<Self, ModuleError> {
        Self::new(ring, 0, Vec::new())
    }

    /// `R / I` for an ideal of a finite ungraded ring.
    pub fn cyclic(ring: Arc<GradedRing>, ideal: &Ideal) -> Result<Self, ModuleError> {
        let rows = ideal
            .all_generators(&ring)
            .into_iter()
            .map(|x| x.coeffs)
            .collect();
        Self::new(ring, 1, rows)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn relation_span(&self) -> &Span {
        &self.rel
    }

    /// Length of element vectors.
    pub fn dim(&self) -> usize {
        self.gens * self.ring.n()
    }

    pub fn card(&self) -> u128 {
        quotient_card(&self.rel).expect("module cardinality overflows u128")
    }

    pub fn is_zero(&self) -> bool {
        self.card() == 1
    }

    pub fn zero_elem(&self) -> Vector {
        zero_vec(self.dim())
    }

    /// Generator `j` as an element.
    pub fn gen(&self, j: usize) -> Vector {
        let mut v = self.zero_elem();
        let one = self.ring.one();
        v[j * self.ring.n()..(j + 1) * self.ring.n()].clone_from_slice(&one.coeffs);
        v
    }

    /// Additive generators: basis element `k` times generator `j`.
    pub fn additive_gens(&self) -> Vec<Vector> {
        (0..self.dim())
            .map(|i| unit_vec(self.ring.coeffs(), self.dim(), i))
            .collect()
    }

    /// `r x` for a ring coefficient vector `r`.
    pub fn act(&self, r: &[Scalar], x: &[Scalar]) -> Vector {
        act_raw(&self.ring, self.gens, r, x)
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let c = self.ring.coeffs();
        x.iter().zip(y).map(|(a, b)| c.add(a, b)).collect()
    }

    pub fn reduce(&self, x: &[Scalar]) -> Vector {
        self.rel.reduce(x)
    }

    pub fn is_zero_elem(&self, x: &[Scalar]) -> bool {
        self.rel.contains(x)
    }

    /// Additive span of the submodule generated by `elems`, including relations.
    pub fn submodule_span(&self, elems: &[Vector]) -> Span {
        let n = self.ring.n();
        let c = self.ring.coeffs();
        let mut rows = Vec::with_capacity(elems.len() * n);
        for z in elems {
            for k in 0..n {
                rows.push(self.act(&unit_vec(c, n, k), z));
            }
        }
        self.rel.with_rows(rows)
    }

    /// `I M` for an ideal `I` of the ring.
    pub fn ideal_times(&self, ideal: &Ideal) -> Span {
        let mut elems = Vec::new();
        for y in ideal.all_generators(&self.ring) {
            for j in 0..self.gens {
                elems.push(self.act(&y.coeffs, &self.gen(j)));
            }
        }
        self.submodule_span(&elems)
    }

    /// Number of elements of an additive subgroup of `M` given as a span containing `rel`.
    pub fn span_card(&self, span: &Span) -> u128 {
        quotient_card(&self.rel).unwrap() / quotient_card(span).unwrap()
    }

    /// Every element of `M`, one representative per class; fails above `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Vector>, ModuleError> {
        let card = self.card();
        if card > cap {
            return Err(ModuleError::SizeCapExceeded(card));
        }
        let dec = self.additive_decomposition();
        let mut out = vec![self.zero_elem()];
        for (b, &o) in dec.basis.iter().zip(&dec.orders) {
            let c = self.ring.coeffs();
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for v in &out {
                for a in 0..o as i64 {
                    let mut w = v.clone();
                    axpy(c, &mut w, &c.from_int(a), b);
                    next.push(w);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// The underlying abelian group as a sum of cyclic groups.
    pub fn additive_decomposition(&self) -> CyclicDecomposition {
        CyclicDecomposition::new(self.ring.coeffs(), &self.additive_gens(), &self.rel)
    }

    /// Sorted orders of the cyclic summands of the underlying group.
    pub fn additive_invariants(&self) -> Vec<u64> {
        let mut o = self.additive_decomposition().orders;
        o.sort();
        o
    }

    /// Presentation of the submodule generated by `elems`, with its inclusion.
    pub fn submodule(&self, elems: &[Vector]) -> Result<ModuleMap, ModuleError> {
        let mut chosen = Vec::new();
        let mut span = self.rel.clone();
        for z in elems {
            if !span.contains(z) {
                chosen.push(self.reduce(z));
                span = self.submodule_span(&chosen);
            }
        }
        let free = FiniteModule::free(self.ring.clone(), chosen.len())?;
        let phi = ModuleMap::new_unchecked(free, self.clone(), chosen);
        let ker = kernel(
            self.ring.coeffs(),
            &phi.additive_images(),
            &self.rel,
            self.dim(),
        );
        let sub = FiniteModule::new(self.ring.clone(), phi.source.gens, ker.rows().to_vec())?;
        Ok(ModuleMap::new_unchecked(sub, self.clone(), phi.columns))
    }

    /// `M / <elems>` with its projection; generators are kept.
    pub fn quotient(&self, elems: &[Vector]) -> Result<ModuleMap, ModuleError> {
        let mut rows = self.relations.clone();
        rows.extend(elems.iter().cloned());
        let q = FiniteModule::new(self.ring.clone(), self.gens, rows)?;
        let cols = (0..self.gens).map(|j| self.gen(j)).collect();
        Ok(ModuleMap::new_unchecked(self.clone(), q, cols))
    }

    pub fn direct_sum(parts: &[&FiniteModule]) -> Result<FiniteModule, ModuleError> {
        let ring = parts
            .first()
            .map(|m| m.ring.clone())
            .ok_or_else(|| ModuleError::Shape("empty direct sum".into()))?;
        let gens: usize = parts.iter().map(|m| m.gens).sum();
        let dim = gens * ring.n();
        let mut rows = Vec::new();
        let mut offset = 0;
        for m in parts {
            if m.ring != ring {
                return Err(ModuleError::Shape("summands over different rings".into()));
            }
            for r in &m.relations {
                let mut v = zero_vec(dim);
                v[offset..offset + m.dim()].clone_from_slice(r);
                rows.push(v);
            }
            offset += m.dim();
        }
        FiniteModule::new(ring, gens, rows)
    }

    /// Relation rows describing the module, formatted with ring basis names.
    pub fn describe(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R^{} / <{} relations>, |M| = ",
            self.gens,
            self.relations.len()
        )?;
        match quotient_card(&self.rel) {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "overflow"),
        }
    }
}

fn block_order_rows(ring: &GradedRing, gens: usize) -> Vec<Vector> {
    let n = ring.n();
    let mut rows = Vec::new();
    for j in 0..gens {
        for o in ring.order_relations() {
            let mut v = zero_vec(gens * n);
            v[j * n..(j + 1) * n].clone_from_slice(&o);
            rows.push(v);
        }
    }
    rows
}

fn act_raw(ring: &GradedRing, gens: usize, r: &[Scalar], x: &[Scalar]) -> Vector {
    let n = ring.n();
    let mut out = Vec::with_capacity(gens * n);
    for j in 0..gens {
        out.extend(ring.mul_vec(r, &x[j * n..(j + 1) * n]));
    }
    out
}

/// An `R`-linear map, stored as the images of the source generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: FiniteModule,
    pub target: FiniteModule,
    pub columns: Vec<Vector>,
}

impl ModuleMap {
    /// Checks that every source relation maps to zero.
    pub fn new(
        source: FiniteModule,
        target: FiniteModule,
        columns: Vec<Vector>,
    ) -> Result<Self, ModuleError> {
        if source.ring != target.ring {
            return Err(ModuleError::Shape(
                "source and target over different rings".into(),
            ));
        }
        if columns.len() != source.gens || columns.iter().any(|c| c.len() != target.dim()) {
            return Err(ModuleError::Shape(
                "map columns do not match generators".into(),
            ));
        }
        let f = Self::new_unchecked(source, target, columns);
        if f.source
            .relations
            .iter()
            .any(|r| !f.target.is_zero_elem(&f.apply(r)))
        {
            return Err(ModuleError::IllFormedMap);
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: FiniteModule,
        target: FiniteModule,
        columns: Vec<Vector>,
    ) -> Self {
        let columns = columns.into_iter().map(|c| target.reduce(&c)).collect();
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    /// Build from ring-element entries: `entries[i][j]` is the coefficient of
    /// target generator `i` in the image of source generator `j`.
    pub fn from_entries(
        source: FiniteModule,
        target: FiniteModule,
        entries: &[Vec<Vector>],
    ) -> Result<Self, ModuleError> {
        let n = source.ring.n();
        let mut cols = vec![target.zero_elem(); source.gens];
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if i >= target.gens || j >= source.gens {
                    return Err(ModuleError::Shape("entry matrix too large".into()));
                }
                cols[j][i * n..(i + 1) * n].clone_from_slice(e);
            }
        }
        Self::new(source, target, cols)
    }

    pub fn identity(m: &FiniteModule) -> Self {
        let cols = (0..m.gens).map(|j| m.gen(j)).collect();
        Self::new_unchecked(m.clone(), m.clone(), cols)
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            vec![target.zero_elem(); source.gens],
        )
    }

    /// Multiplication by a ring element on `m`.
    pub fn scalar(m: &FiniteModule, r: &[Scalar]) -> Self {
        let cols = (0..m.gens).map(|j| m.act(r, &m.gen(j))).collect();
        Self::new_unchecked(m.clone(), m.clone(), cols)
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        let n = self.source.ring.n();
        let c = self.source.ring.coeffs();
        let mut out = self.target.zero_elem();
        for (j, col) in self.columns.iter().enumerate() {
            let r = &x[j * n..(j + 1) * n];
            if is_zero_vec(r) {
                continue;
            }
            let img = self.target.act(r, col);
            axpy(c, &mut out, &c.one(), &img);
        }
        self.target.reduce(&out)
    }

    /// Images of the source's additive generators.
    pub fn additive_images(&self) -> Vec<Vector> {
        self.source
            .additive_gens()
            .iter()
            .map(|x| self.apply(x))
            .collect()
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if first.target != self.source {
            return Err(ModuleError::Shape(
                "composition of incompatible maps".into(),
            ));
        }
        let cols = first.columns.iter().map(|c| self.apply(c)).collect();
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            cols,
        ))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let cols = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| self.target.add(a, b))
            .collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), cols)
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        let c = self.source.ring.coeffs();
        let cols = self
            .columns
            .iter()
            .map(|col| col.iter().map(|a| c.mul(s, a)).collect())
            .collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), cols)
    }

    pub fn neg(&self) -> ModuleMap {
        self.scale(&self.source.ring.coeffs().from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| self.target.is_zero_elem(c))
    }

    pub fn same_as(&self, other: &ModuleMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .columns
                .iter()
                .zip(&other.columns)
                .all(|(a, b)| self.target.reduce(a) == self.target.reduce(b))
    }

    /// Additive span of the image inside the target (contains the target relations).
    pub fn image_span(&self) -> Span {
        self.target
            .relation_span()
            .with_rows(self.additive_images())
    }

    /// Additive span of the kernel inside the source (contains the source relations).
    pub fn kernel_span(&self) -> Span {
        let c = self.source.ring.coeffs();
        let k = kernel(
            c,
            &self.additive_images(),
            self.target.relation_span(),
            self.target.dim(),
        );
        // kernel coordinates are already source element vectors
        self.source.relation_span().sum(&k)
    }

    pub fn kernel(&self) -> Result<ModuleMap, ModuleError> {
        let span = self.kernel_span();
        self.source.submodule(span.rows())
    }

    pub fn image(&self) -> Result<ModuleMap, ModuleError> {
        self.target.submodule(&self.columns)
    }

    /// Projection from the target onto the cokernel.
    pub fn cokernel(&self) -> Result<ModuleMap, ModuleError> {
        self.target.quotient(&self.columns)
    }

    pub fn is_injective(&self) -> bool {
        self.source.span_card(&self.kernel_span()) == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.target.span_card(&self.image_span()) == self.target.card()
    }

    /// Some `x` with `f(x) = y`.
    pub fn preimage(&self, y: &[Scalar]) -> Option<Vector> {
        let c = self.source.ring.coeffs();
        Solver::new(
            c,
            &self.additive_images(),
            self.target.relation_span(),
            self.target.dim(),
        )
        .solve(y)
    }

    /// `F'` with `j F' = self i`, for injective `j`.
    pub fn restrict(&self, i: &ModuleMap, j: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        let solver = Solver::new(
            j.source.ring.coeffs(),
            &j.additive_images(),
            j.target.relation_span(),
            j.target.dim(),
        );
        let mut cols = Vec::new();
        for col in &i.columns {
            let y = self.apply(col);
            cols.push(solver.solve(&y).ok_or(ModuleError::IllFormedMap)?);
        }
        ModuleMap::new(i.source.clone(), j.source.clone(), cols)
    }

    /// `H` with `pi H = self`, for a free source and surjective `pi`.
    pub fn lift_through(&self, pi: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        let solver = Solver::new(
            pi.source.ring.coeffs(),
            &pi.additive_images(),
            pi.target.relation_span(),
            pi.target.dim(),
        );
        let cols = self
            .columns
            .iter()
            .map(|y| solver.solve(y).ok_or(ModuleError::IllFormedMap))
            .collect::<Result<Vec<_>, _>>()?;
        ModuleMap::new(self.source.clone(), pi.source.clone(), cols)
    }

    /// `F` on a free module `B` with `F iota = self`, where `iota: A -> B` and
    /// `self: A -> C` (solvable whenever `C` is injective).
    pub fn extend_along(&self, iota: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        let ring = &self.source.ring;
        let c = ring.coeffs();
        let n = ring.n();
        let b = &iota.target;
        let t = &self.target;
        let a_gens = self.source.gens;
        // unknown: images of B's generators, i.e. b.gens elements of C
        let mut images = Vec::new();
        for l in 0..b.gens {
            for e in t.additive_gens() {
                let mut img = Vec::with_capacity(a_gens * t.dim());
                for j in 0..a_gens {
                    let w = &iota.columns[j][l * n..(l + 1) * n];
                    img.extend(t.act(w, &e));
                }
                images.push(img);
            }
        }
        let mut rel = Vec::new();
        for j in 0..a_gens {
            for r in t.relation_span().rows() {
                let mut v = zero_vec(a_gens * t.dim());
                v[j * t.dim()..(j + 1) * t.dim()].clone_from_slice(r);
                rel.push(v);
            }
        }
        let rel = Span::new(c, rel, a_gens * t.dim());
        let target: Vector = self.columns.iter().flatten().cloned().collect();
        let x = Solver::new(c, &images, &rel, a_gens * t.dim())
            .solve(&target)
            .ok_or_else(|| {
                ModuleError::Ring(RingError::Unsupported(
                    "target is not injective relative to this map".into(),
                ))
            })?;
        let cols = x.chunks(t.dim()).map(|c| c.to_vec()).collect();
        ModuleMap::new(b.clone(), t.clone(), cols)
    }

    /// `f (+) g : A (+) B -> C (+) D`.
    pub fn direct_sum(&self, other: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        let src = FiniteModule::direct_sum(&[&self.source, &other.source])?;
        let tgt = FiniteModule::direct_sum(&[&self.target, &other.target])?;
        let mut cols = Vec::new();
        for col in &self.columns {
            let mut v = col.clone();
            v.extend(other.target.zero_elem());
            cols.push(v);
        }
        for col in &other.columns {
            let mut v = self.target.zero_elem();
            v.extend(col.iter().cloned());
            cols.push(v);
        }
        ModuleMap::new(src, tgt, cols)
    }
}
