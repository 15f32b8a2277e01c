//! Benchmarks for the hot paths: exact circle geometry, disk-occlusion
//! queries, full simulation runs, and bounded exploration.

use circlefg_core::engine::{monitors, run, InitConfig, RunLimits};
use circlefg_core::explorer::{explore, ExploreOpts};
use circlefg_core::lattice::{classify_position, grid_circumference, Circle, GridPoint, Side};
use circlefg_core::occlusion::{visible, visible_sampled, DiskScene};
use circlefg_core::scheduler::Policy;
use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn geometry(c: &mut Criterion) {
    let circle = Circle {
        center2: (0, 1),
        d: 49,
    };
    c.bench_function("grid_circumference_d49", |b| {
        b.iter(|| grid_circumference(black_box(&circle)).unwrap())
    });
    c.bench_function("classify_position_sweep", |b| {
        b.iter(|| {
            let mut inside = 0usize;
            for y in -30..=30 {
                for x in -30..=30 {
                    if classify_position(&circle, GridPoint::new(x, y), Side::Left)
                        == circlefg_core::lattice::PositionClass::StrictlyInside
                    {
                        inside += 1;
                    }
                }
            }
            black_box(inside)
        })
    });
}

fn random_scene(seed: u64, n: usize) -> DiskScene {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut used = std::collections::HashSet::new();
    let mut centers = Vec::new();
    while centers.len() < n {
        let p = (rng.gen_range(0..10i64), rng.gen_range(0..10i64));
        if used.insert(p) {
            centers.push(GridPoint::new(p.0, p.1));
        }
    }
    DiskScene::new(centers, 0.5).unwrap()
}

fn occlusion(c: &mut Criterion) {
    let scene = random_scene(42, 12);
    c.bench_function("visible_all_pairs_12_disks", |b| {
        b.iter(|| {
            let mut count = 0usize;
            for i in 0..scene.len() {
                for j in (i + 1)..scene.len() {
                    if visible(&scene, i, j).unwrap() {
                        count += 1;
                    }
                }
            }
            black_box(count)
        })
    });
    c.bench_function("visible_sampled_m64", |b| {
        b.iter(|| visible_sampled(black_box(&scene), 0, scene.len() - 1, 64).unwrap())
    });
}

fn simulation(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(9);
    let mut used = std::collections::HashSet::new();
    let mut robots = Vec::new();
    while robots.len() < 8 {
        let p = (rng.gen_range(0..12i64), rng.gen_range(0..12i64));
        if used.insert(p) {
            robots.push(GridPoint::new(p.0, p.1));
        }
    }
    let config = InitConfig {
        robots,
        radius: 0.5,
        flips: None,
        seed: 9,
    };
    let limits = RunLimits {
        max_events: 1_000_000,
    };
    c.bench_function("run_async_8_robots", |b| {
        b.iter(|| {
            run(
                black_box(&config),
                &Policy::AsyncRandom { seed: None, k: 64 },
                &limits,
            )
            .unwrap()
        })
    });
    let outcome = run(&config, &Policy::AsyncRandom { seed: None, k: 64 }, &limits).unwrap();
    c.bench_function("monitors_8_robot_trace", |b| {
        b.iter(|| monitors(black_box(&config), black_box(&outcome.events)))
    });
}

fn exploration(c: &mut Criterion) {
    let config = InitConfig {
        robots: vec![
            GridPoint::new(0, 0),
            GridPoint::new(0, 1),
            GridPoint::new(0, 2),
            GridPoint::new(0, 3),
        ],
        radius: 0.5,
        flips: Some(vec![false, true, false, true]),
        seed: 11,
    };
    c.bench_function("explore_contiguous_column", |b| {
        b.iter(|| explore(black_box(&config), &ExploreOpts::default()).unwrap())
    });
}

criterion_group!(benches, geometry, occlusion, simulation, exploration);
criterion_main!(benches);
