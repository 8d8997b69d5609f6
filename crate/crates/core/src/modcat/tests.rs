use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ring::build::{cyclic, exterior, truncated};
use crate::ring::{GradedRing, Ideal};

fn cat(r: GradedRing) -> ModuleCategory {
    ModuleCategory::new(r).unwrap()
}

fn elem(ring: &GradedRing, coeffs: &[i64]) -> Vec<crate::scalar::Scalar> {
    coeffs.iter().map(|&a| ring.coeffs().from_int(a)).collect()
}

fn quotient_by(c: &ModuleCategory, x: &[i64]) -> FiniteModule {
    let r = c.ring();
    let x = r.element(0, elem(r, x));
    FiniteModule::cyclic(r.clone(), &Ideal::generated(r, &[x])).unwrap()
}

#[test]
fn multiplication_by_two_on_z4() {
    let c = cat(cyclic(4).unwrap());
    let r = c.free(1);
    let two = ModuleMap::scalar(&r, &elem(c.ring(), &[2]));
    let k = two.kernel().unwrap().source;
    let i = two.image().unwrap().source;
    let q = two.cokernel().unwrap().target;
    for m in [&k, &i, &q] {
        assert_eq!(m.card(), 2);
    }
    assert_eq!(k.card() * i.card(), r.card());
    let zero = ModuleMap::zero(&r, &r);
    assert_eq!(zero.kernel().unwrap().source.card(), 4);
    assert_eq!(zero.cokernel().unwrap().target.card(), 4);
}

#[test]
fn augmentation_kernel() {
    let c = cat(truncated(3, 3, 0, None).unwrap());
    let k = c.residue_module();
    let r = c.free(1);
    let aug = ModuleMap::new(r.clone(), k.clone(), vec![k.gen(0)]).unwrap();
    let ker = aug.kernel().unwrap().source;
    assert_eq!(ker.card(), 9);
    assert!(!c.is_projective(&ker).unwrap());
    let cover = c.projective_cover(&ker).unwrap();
    assert_eq!(cover.source.generators(), 1);
    assert_eq!(cover.kernel().unwrap().source.card(), 3);
    // (t) ≅ F_3[t]/(t^2)
    assert!(c.iso_test(&ker, &quotient_by(&c, &[0, 0, 1])).unwrap());
}

#[test]
fn projectivity() {
    let c = cat(cyclic(4).unwrap());
    assert!(c.is_projective(&c.free(1)).unwrap());
    assert!(!c.is_projective(&c.residue_module()).unwrap());
    let cover = c.projective_cover(&c.residue_module()).unwrap();
    assert_eq!(cover.source.card(), 4);
}

#[test]
fn ill_formed_map_rejected() {
    let c = cat(cyclic(4).unwrap());
    let k = c.residue_module();
    let r = c.free(1);
    assert!(matches!(
        ModuleMap::new(k, r.clone(), vec![r.gen(0)]),
        Err(crate::error::ModuleError::IllFormedMap)
    ));
}

#[test]
fn heller_shifts() {
    for ring in [cyclic(4).unwrap(), exterior(2, 0, None).unwrap()] {
        let c = cat(ring);
        let k = c.residue_module();
        let omega = c.heller_shift(&k).unwrap();
        assert!(c.iso_test(&omega, &k).unwrap());
        assert!(c.heller_shift(&c.free(2)).unwrap().is_zero());
        assert_eq!(
            c.heller_cube_check(&[k, c.free(1)]).unwrap(),
            vec![true, true]
        );
    }
}

#[test]
fn iso_examples() {
    let c = cat(cyclic(4).unwrap());
    let k = c.residue_module();
    let r = c.free(1);
    let a = FiniteModule::direct_sum(&[&k, &r]).unwrap();
    let b = FiniteModule::direct_sum(&[&r, &k]).unwrap();
    assert!(c.iso_test(&a, &b).unwrap());
    let kk = FiniteModule::direct_sum(&[&k, &k]).unwrap();
    assert!(!c.iso_test(&r, &kk).unwrap());
}

#[test]
fn brute_force_iso_over_non_chain_ring() {
    let ring = GradedRing::from_json(
        r#"{"characteristic": 2,
            "basis": [{"name": "one", "degree": 0}, {"name": "x", "degree": 0}, {"name": "y", "degree": 0}]}"#,
    )
    .unwrap();
    let c = cat(ring);
    let mx = quotient_by(&c, &[0, 1, 0]);
    let my = quotient_by(&c, &[0, 0, 1]);
    let k = c.residue_module();
    // same module presented on two generators: x e1 = 0, e2 = y e1
    let r = c.ring();
    let mx2 = FiniteModule::new(
        r.clone(),
        2,
        vec![elem(r, &[0, 1, 0, 0, 0, 0]), elem(r, &[0, 0, 1, 1, 0, 0])],
    )
    .unwrap();
    assert!(c.iso_test(&mx, &mx2).unwrap());
    assert!(!c.iso_test(&mx, &my).unwrap());
    assert!(!c
        .iso_test(&mx, &FiniteModule::direct_sum(&[&k, &k]).unwrap())
        .unwrap());
    assert!(!c.is_quasi_frobenius());
    assert!(matches!(
        c.stable_hom(&k, &k),
        Err(crate::error::ModuleError::NotQuasiFrobenius)
    ));
}

#[test]
fn stable_homs() {
    let c = cat(exterior(2, 0, None).unwrap());
    let k = c.residue_module();
    assert_eq!(c.stable_hom(&k, &k).unwrap().length, Some(1));
    assert_eq!(c.stable_hom(&c.free(1), &k).unwrap().card, 1);
    assert_eq!(c.stable_hom(&k, &c.free(1)).unwrap().card, 1);
    let c = cat(cyclic(4).unwrap());
    let k = c.residue_module();
    assert_eq!(c.stable_hom(&k, &k).unwrap().length, Some(1));
}

#[test]
fn envelopes_and_inverse_shift() {
    let c = cat(truncated(3, 3, 0, None).unwrap());
    let k = c.residue_module();
    let iota = c.injective_envelope(&k).unwrap();
    assert!(iota.is_injective());
    assert_eq!(iota.target.generators(), 1);
    let up = c.inverse_heller_shift(&k).unwrap();
    assert_eq!(up.card(), 9);
    let back = c.heller_shift(&up).unwrap();
    assert!(c.iso_test(&back, &k).unwrap());
}

#[test]
fn random_modules_satisfy_heller_cube() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ring in [cyclic(4).unwrap(), exterior(2, 0, None).unwrap()] {
        let c = cat(ring);
        let samples: Vec<_> = (0..10).map(|_| c.random_module(&mut rng, 3, 3)).collect();
        assert!(c
            .heller_cube_check(&samples)
            .unwrap()
            .into_iter()
            .all(|b| b));
    }
}

#[test]
fn module_spec_file() {
    let spec = spec::ModuleSpec::from_json(
        r#"{"ring": {"characteristic": 4, "basis": [{"name": "one", "degree": 0}]},
            "generators": 2,
            "relations": [[[{"coeff": 2, "basis": "one"}], []]]}"#,
    )
    .unwrap();
    let m = spec.build(std::path::Path::new(".")).unwrap();
    assert_eq!(m.card(), 8);
    let ring = Arc::new(cyclic(4).unwrap());
    assert_eq!(spec.build_over(ring).unwrap().card(), 8);
}
