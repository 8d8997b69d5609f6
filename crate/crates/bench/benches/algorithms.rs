use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use projtri::classify::classify;
use projtri::dg::{projective_ring, DgAlgebra, DgModule, Homology, ProjMap, Triangle, Window};
use projtri::genhyp::ggh_verdict;
use projtri::modcat::ModuleCategory;
use projtri::ring::build;

fn classification(c: &mut Criterion) {
    let z4 = build::cyclic(4).unwrap();
    let f5x3 = build::truncated(5, 3, 0, None).unwrap();
    let prod = build::product(&[build::cyclic(2).unwrap(), build::cyclic(4).unwrap()]).unwrap();
    c.bench_function("classify Z/4", |b| {
        b.iter(|| classify(black_box(&z4), 0).unwrap())
    });
    c.bench_function("classify F5[x]/(x^3)", |b| {
        b.iter(|| classify(black_box(&f5x3), 0).unwrap())
    });
    c.bench_function("classify F2 x Z/4", |b| {
        b.iter(|| classify(black_box(&prod), 0).unwrap())
    });
}

fn heller(c: &mut Criterion) {
    let cat = ModuleCategory::new(build::exterior(2, 0, None).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples: Vec<_> = (0..8).map(|_| cat.random_module(&mut rng, 3, 3)).collect();
    c.bench_function("heller cube, 8 modules over F2[x]/(x^2)", |b| {
        b.iter(|| cat.heller_cube_check(black_box(&samples)).unwrap())
    });
}

fn dg(c: &mut Criterion) {
    let alg = Arc::new(DgAlgebra::new(3, 1, 1).unwrap());
    let window = Window::new(-6, 6);
    let free = DgModule::free(alg.clone(), vec![0]);
    c.bench_function("homology of A, (3,1,1), [-6,6]", |b| {
        b.iter(|| Homology::compute(black_box(&free), window, 16).unwrap())
    });
    let ring = Arc::new(projective_ring(&alg));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = ProjMap::random(ring, &mut rng, 3, 2);
    let t = Triangle::from_projective_map(&alg, &f).unwrap();
    c.bench_function("verify one random triangle", |b| {
        b.iter(|| t.verify(window, 16).unwrap())
    });
}

fn generating_hypothesis(c: &mut Criterion) {
    let mut g = c.benchmark_group("ggh");
    g.sample_size(10);
    g.bench_function("Z/3, [-6,6]", |b| {
        b.iter(|| ggh_verdict(3, 1, (-6, 6)).unwrap())
    });
    g.bench_function("Z/9, [-6,6]", |b| {
        b.iter(|| ggh_verdict(3, 2, (-6, 6)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, classification, heller, dg, generating_hypothesis);
criterion_main!(benches);
