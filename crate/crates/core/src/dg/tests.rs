use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::DgError;

fn alg(p: u64, i: i64, n: i64) -> Arc<DgAlgebra> {
    Arc::new(DgAlgebra::new(p, i, n).unwrap())
}

#[test]
fn ua_relation() {
    let a = alg(3, 1, 1);
    let lhs = a.mul_raw(&a.gen_u(), &a.gen_a());
    let au = a.mul_raw(&a.gen_a(), &a.gen_u());
    let rhs = a.sub(&a.scale(&a.coeffs().from_int(-1), &au), &a.gen_v(1));
    assert_eq!(lhs, rhs);
    assert!(a.mul_raw(&a.gen_a(), &a.gen_a()).is_zero());
}

#[test]
fn differential_on_monomials() {
    let a = alg(3, 1, 1);
    for m in 0..=6 {
        let x = a.monomial(1, Mono::new(0, true, m));
        assert_eq!(
            a.differential(&x).unwrap(),
            a.monomial(1, Mono::new(0, false, m + 2))
        );
        assert!(a.d_raw(&a.monomial(1, Mono::new(0, false, m))).is_zero());
    }
}

#[test]
fn confluence() {
    for (p, i, n) in [(3, 1, 1), (2, 0, 0), (2, 1, 0), (5, 1, 1), (3, 3, 1)] {
        assert_eq!(
            check_confluence(&alg(p, i, n), 6),
            Ok(()),
            "({p}, {i}, {n})"
        );
    }
}

#[test]
fn parity_cases() {
    let a = alg(3, 1, 1);
    assert_eq!((a.a_degree(), a.v_degree()), (3, 4));
    assert!(alg(2, 0, 0).v_is_one());
    assert!(matches!(
        DgAlgebra::new(3, 0, 0),
        Err(DgError::ParityObstruction(_))
    ));
    assert!(matches!(
        DgAlgebra::new(3, 2, 1),
        Err(DgError::ParityObstruction(_))
    ));
    assert!(matches!(DgAlgebra::new(4, 1, 1), Err(DgError::NotPrime(4))));
}

fn random_mono(rng: &mut ChaCha8Rng) -> Mono {
    Mono::new(
        rng.gen_range(-2..=2),
        rng.gen_bool(0.5),
        rng.gen_range(0..5),
    )
}

#[test]
fn leibniz_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, i, n) in [(3, 1, 1), (2, 1, 0), (5, 3, 1)] {
        let a = alg(p, i, n);
        let c = a.coeffs();
        for _ in 0..200 {
            let x = a.monomial(1, random_mono(&mut rng));
            let y = a.monomial(1, random_mono(&mut rng));
            let xd = a.elem_degree(&x).unwrap();
            let lhs = a.d_raw(&a.mul_raw(&x, &y));
            let rhs = a.add(
                &a.mul_raw(&a.d_raw(&x), &y),
                &a.scale(&c.sign(n * xd), &a.mul_raw(&x, &a.d_raw(&y))),
            );
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn homology_of_the_algebra() {
    let a = alg(3, 1, 1);
    let m = DgModule::free(a.clone(), vec![0]);
    let h = Homology::compute(&m, Window::new(-6, 6), 16).unwrap();
    for d in -6i64..=6 {
        let expected = usize::from(d.rem_euclid(4) <= 1);
        assert_eq!(h.dim(d), expected, "degree {d}");
    }
    assert!(h.x_squared_zero());
    assert_eq!(h.free_rank(), Some(1));

    let b = alg(2, 0, 0);
    let h = Homology::compute(&DgModule::free(b, vec![0]), Window::new(-2, 2), 16).unwrap();
    assert_eq!(
        h.dims().values().copied().collect::<Vec<_>>(),
        vec![0, 0, 2, 0, 0]
    );
    assert_eq!(h.free_rank(), Some(1));
}

#[test]
fn weight_precondition() {
    let a = alg(3, 1, 1);
    let m = DgModule::free(a, vec![0]);
    assert!(matches!(
        Homology::compute(&m, Window::new(-10, 10), 16),
        Err(DgError::WindowTooWideForWeightBound { .. })
    ));
}

#[test]
fn cone_of_u() {
    let a = alg(3, 1, 1);
    let src = DgModule::free(a.clone(), vec![1]);
    let tgt = DgModule::free(a.clone(), vec![0]);
    let f = DgMap::new(src, tgt, vec![vec![a.gen_u()]]).unwrap();
    let c = f.cone().unwrap();
    let h = Homology::compute(&c, Window::new(-6, 6), 16).unwrap();
    // kernel and cokernel of x glue into a free k[x]/x^2 module
    let nonzero: Vec<i64> = h
        .dims()
        .into_iter()
        .filter(|(_, k)| *k > 0)
        .map(|(d, _)| d)
        .collect();
    assert!(
        nonzero
            .iter()
            .all(|d| d.rem_euclid(4) == 0 || d.rem_euclid(4) == 3),
        "{nonzero:?}"
    );
    assert_eq!(h.total_dim(), 6);
    assert_eq!(h.free_rank(), Some(1));
}

#[test]
fn not_a_chain_map() {
    let a = alg(3, 1, 1);
    let src = DgModule::free(a.clone(), vec![3]);
    let tgt = DgModule::free(a.clone(), vec![0]);
    assert!(matches!(
        DgMap::new(src, tgt, vec![vec![a.gen_a()]]),
        Err(DgError::NotChainMap(0))
    ));
}

/// Direct rank computation of a map of free `R`-modules in one degree, as
/// `(dim source, dim target, rank)`.
fn slice_ranks(f: &ProjMap, degree: i64) -> (usize, usize, usize) {
    let ring = &f.ring;
    let c = *ring.coeffs();
    let tgt: Vec<(usize, usize)> = f
        .target
        .iter()
        .enumerate()
        .flat_map(|(i, t)| {
            (0..ring.n())
                .filter(move |&k| ring.in_slice(k, degree - t))
                .map(move |k| (i, k))
        })
        .collect();
    let mut rows = Vec::new();
    let mut nsrc = 0;
    for (j, s) in f.source.iter().enumerate() {
        for k in 0..ring.n() {
            if !ring.in_slice(k, degree - s) {
                continue;
            }
            nsrc += 1;
            let b = ring.basis_element_at(k, degree - s);
            let row = tgt
                .iter()
                .map(|&(i, k2)| ring.mul(&f.entries[j][i], &b).coeffs[k2])
                .collect();
            rows.push(row);
        }
    }
    (
        nsrc,
        tgt.len(),
        crate::linalg::Span::new(&c, rows, tgt.len()).rank(),
    )
}

/// `dim H(C)_D = dim coker f_D + dim ker f_{D-n}`.
fn oracle_cone_dim(f: &ProjMap, n: i64, degree: i64) -> usize {
    let (_, t, r) = slice_ranks(f, degree);
    let (s, _, r2) = slice_ranks(f, degree - n);
    (t - r) + (s - r2)
}

fn setup(p: u64, i: i64, n: i64, bound: u32) -> (Arc<DgAlgebra>, Arc<crate::ring::GradedRing>) {
    let a = Arc::new(DgAlgebra::with_weight_bound(p, i, n, bound).unwrap());
    let r = Arc::new(projective_ring(&a));
    (a, r)
}

#[test]
fn triangle_of_x() {
    let (a, r) = setup(3, 1, 1, 16);
    let w = Window::new(-6, 6);
    let f = ProjMap::times_x(r.clone(), &a, 0, 1);
    let t = Triangle::from_projective_map(&a, &f).unwrap();
    let report = t.verify(w, 16).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    for d in w.degrees() {
        assert_eq!(
            report.dims[&d][2],
            oracle_cone_dim(&f, a.n, d),
            "degree {d}"
        );
    }
    let h = Homology::compute(&t.third, w, 16).unwrap();
    assert_eq!(h.free_rank(), Some(1));
    assert!(t.rotate().verify(w, 16).unwrap().passed());
    assert!(t.rotate().rotate().verify(w, 16).unwrap().passed());

    let broken = t.with_zero_third_map().verify(w, 16).unwrap();
    assert!(broken
        .failures
        .iter()
        .any(|f| f.at == Position::ShiftedFirst));

    let twice = ProjMap::times_x(r, &a, 0, 2);
    let t2 = Triangle::from_projective_map(&a, &twice).unwrap();
    let r2 = t2.verify(w, 16).unwrap();
    assert!(r2.passed());
    assert_eq!(r2.dims, report.dims);
}

#[test]
fn identity_and_zero_maps() {
    let (a, r) = setup(3, 1, 1, 16);
    let w = Window::new(-6, 6);
    let id = Triangle::from_projective_map(&a, &ProjMap::identity(r.clone(), vec![0, 1])).unwrap();
    let rep = id.verify(w, 16).unwrap();
    assert!(rep.passed());
    assert!(rep.dims.values().all(|d| d[2] == 0));

    let z = ProjMap::zero(r, vec![2], vec![0]);
    let t = Triangle::from_projective_map(&a, &z).unwrap();
    let rep = t.verify(w, 16).unwrap();
    assert!(rep.passed());
    for d in w.degrees() {
        assert_eq!(rep.dims[&d][2], rep.dims[&d][1] + rep.dims[&d][3]);
    }
}

#[test]
fn wrong_ring_is_rejected() {
    let (a, _) = setup(3, 1, 1, 16);
    let other = Arc::new(crate::ring::build::exterior(3, 2, Some(("v", 4))).unwrap());
    let f = ProjMap::identity(other, vec![0]);
    assert!(matches!(
        lift_map(&a, &f),
        Err(DgError::NotProjectiveInput(_))
    ));
}

#[test]
fn random_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, i, n) in [(3, 1, 1), (2, 0, 0), (2, 1, 0)] {
        let (a, r) = setup(p, i, n, 16);
        let w = Window::new(-4, 4);
        for _ in 0..6 {
            let f = ProjMap::random(r.clone(), &mut rng, 3, 2);
            let t = Triangle::from_projective_map(&a, &f).unwrap();
            let rep = t.verify(w, 16).unwrap();
            assert!(rep.passed(), "({p},{i},{n}) {f:?}: {:?}", rep.failures);
            for d in w.degrees() {
                assert_eq!(rep.dims[&d][2], oracle_cone_dim(&f, n, d));
            }
        }
    }
}
