use std::path::Path;

use proptest::prelude::*;

use projtri::classify::classify;
use projtri::dg::{DgAlgebra, Mono};
use projtri::linalg::Span;
use projtri::ring::spec::CoeffSpec;
use projtri::{Coeffs, GradedRing, RingSpec};

fn corpus() -> Vec<RingSpec> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../rings");
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .iter()
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("ring"))
        .map(|p| RingSpec::from_json(&std::fs::read_to_string(p).unwrap()).unwrap())
        .filter(|s| s.characteristic > 0)
        .collect()
}

fn inv_mod(a: i64, m: i64) -> i64 {
    (1..m).find(|b| (a * b).rem_euclid(m) == 1).expect("unit")
}

/// Reorder the basis by `perm` and replace each non-unit generator `b_i` by `c_i b_i`.
fn disguise(spec: &RingSpec, perm: &[usize], scales: &[i64]) -> RingSpec {
    let m = spec.characteristic as i64;
    let scale_of = |name: &str| -> i64 {
        let i = spec.basis.iter().position(|b| b.name == name).unwrap();
        if name == "one" {
            1
        } else {
            scales[i % scales.len()]
        }
    };
    let mut out = spec.clone();
    out.basis = perm.iter().map(|&i| spec.basis[i].clone()).collect();
    for prod in &mut out.products {
        let (cl, cr) = (scale_of(&prod.left), scale_of(&prod.right));
        for t in &mut prod.terms {
            let CoeffSpec::Int(a) = t.coeff else {
                panic!("integer coefficients expected")
            };
            let k = inv_mod(scale_of(&t.basis), m);
            t.coeff = CoeffSpec::Int((a * cl * cr * k).rem_euclid(m));
        }
    }
    out
}

fn summary(ring: &GradedRing, n: i64) -> (bool, Vec<String>) {
    let v = classify(ring, n).unwrap();
    let mut kinds: Vec<String> = v
        .factors
        .iter()
        .map(|f| {
            format!(
                "{}:{:?}",
                f.verdict.kind.name(),
                f.verdict.kind.reason().map(|r| r.name())
            )
        })
        .collect();
    kinds.sort();
    (v.is_delta, kinds)
}

fn unit_mod(m: u64) -> impl Strategy<Value = i64> {
    (1..m as i64).prop_filter("unit", move |a| num_integer::gcd(*a, m as i64) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn howell_form_is_canonical(
        modulus in prop::sample::select(vec![4u64, 8, 9, 6, 12]),
        rows in prop::collection::vec(prop::collection::vec(0i64..36, 3), 1..4),
        mix in prop::collection::vec(0i64..36, 4),
    ) {
        let c = Coeffs::modular(modulus);
        let rows: Vec<_> = rows.iter().map(|r| r.iter().map(|&a| c.from_int(a)).collect::<Vec<_>>()).collect();
        let a = Span::new(&c, rows.clone(), 3);
        let mut shuffled: Vec<_> = rows.iter().rev().cloned().collect();
        let combo: Vec<_> = (0..3)
            .map(|j| rows.iter().zip(&mix).fold(c.zero(), |s, (r, k)| c.add(&s, &c.mul(&c.from_int(*k), &r[j]))))
            .collect();
        shuffled.push(combo);
        let b = Span::new(&c, shuffled, 3);
        prop_assert_eq!(a.rows(), b.rows());
        for r in &rows {
            prop_assert!(a.contains(r));
        }
    }

    #[test]
    fn leibniz_rule(
        which in 0usize..4,
        x in (-3i64..=3, any::<bool>(), 0u32..6),
        y in (-3i64..=3, any::<bool>(), 0u32..6),
    ) {
        let (p, i, n) = [(3, 1, 1), (2, 0, 0), (2, 1, 1), (5, 1, 1)][which];
        let a = DgAlgebra::new(p, i, n).unwrap();
        let c = a.coeffs();
        let x = a.monomial(1, Mono::new(x.0, x.1, x.2));
        let y = a.monomial(1, Mono::new(y.0, y.1, y.2));
        let sign = c.sign(n * a.elem_degree(&x).unwrap());
        let lhs = a.d_raw(&a.mul_raw(&x, &y));
        let rhs = a.add(&a.mul_raw(&a.d_raw(&x), &y), &a.scale(&sign, &a.mul_raw(&x, &a.d_raw(&y))));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.d_raw(&a.d_raw(&x)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_ignores_basis_presentation(
        idx in any::<prop::sample::Index>(),
        seed in any::<u64>(),
        n in 0i64..=1,
    ) {
        let specs = corpus();
        let spec = &specs[idx.index(specs.len())];
        let m = spec.characteristic;
        let mut perm: Vec<usize> = (0..spec.basis.len()).collect();
        let mut s = seed;
        for k in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        let units: Vec<i64> = (1..m as i64).filter(|a| num_integer::gcd(*a, m as i64) == 1).collect();
        let scales: Vec<i64> = (0..spec.basis.len()).map(|k| units[(seed as usize / (k + 1)) % units.len()]).collect();
        let original = GradedRing::from_spec(spec).unwrap();
        let disguised = GradedRing::from_spec(&disguise(spec, &perm, &scales)).unwrap();
        prop_assert_eq!(summary(&original, n), summary(&disguised, n));
    }

    #[test]
    fn unit_rescaling_alone(u in unit_mod(5)) {
        let spec = corpus().into_iter().find(|s| s.name.as_deref() == Some("F5[x]/(x^3)")).unwrap();
        let ring = GradedRing::from_spec(&disguise(&spec, &(0..spec.basis.len()).collect::<Vec<_>>(), &[u])).unwrap();
        prop_assert_eq!(summary(&ring, 0).0, false);
    }
}
