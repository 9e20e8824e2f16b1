use std::collections::HashSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twocut::bisect::{bisect_four_with, PointSetFamily, SearchOptions};
use twocut::mass::{solve_masses_report, PolygonMass};
use twocut::scalar;
use twocut::Point;

fn family(per_set: usize, seed: u64) -> PointSetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let sets = (0..4)
        .map(|_| {
            let mut pts = Vec::new();
            while pts.len() < per_set {
                let (x, y, d) = (rng.gen_range(-400..=400), rng.gen_range(-400..=400), rng.gen_range(1..=4));
                let p = Point::new(scalar::ratio(x, d), scalar::ratio(y, d));
                if seen.insert(p.clone()) {
                    pts.push(p);
                }
            }
            pts
        })
        .collect();
    PointSetFamily::from_points(sets).unwrap()
}

fn bisect(c: &mut Criterion) {
    let mut group = c.benchmark_group("bisect_four");
    group.sample_size(10);
    for per_set in [5, 15, 25] {
        let fam = family(per_set, per_set as u64);
        for (name, parallel) in [("sequential", false), ("parallel", true)] {
            let opts = SearchOptions { parallel };
            group.bench_with_input(BenchmarkId::new(name, 4 * per_set), &fam, |b, f| {
                b.iter(|| bisect_four_with(black_box(f), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn masses(c: &mut Criterion) {
    let tri = |pts: [(i64, i64); 3]| PolygonMass::from_ints(&pts).unwrap();
    let ms = vec![
        tri([(0, 0), (5, 1), (2, 4)]),
        tri([(-6, 1), (-1, 2), (-3, 7)]),
        tri([(-4, -5), (1, -6), (-2, -1)]),
        tri([(3, -4), (8, -2), (4, 1)]),
    ];
    let mut group = c.benchmark_group("solve_masses");
    group.sample_size(10);
    for (name, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_function(name, |b| b.iter(|| solve_masses_report(black_box(&ms), 1e-6, 32, parallel)));
    }
    group.finish();
}

criterion_group!(benches, bisect, masses);
criterion_main!(benches);
