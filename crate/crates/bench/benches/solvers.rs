use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rbymatch::curve::{find_crossing_pair, imbalance_curve, LatticePoint};
use rbymatch::cycle::{solve_even_cycle, solve_even_cycle_via_curve};
use rbymatch::lp::{build_lp, solve_lp};
use rbymatch::{combine_two_matchings, generate_instance, solve, Color, ColoredGraph, CycleOrPath, GenMode, GenSpec, Matching, OracleCap};

fn cycles(c: &mut Criterion) {
    let mut group = c.benchmark_group("even_cycle");
    for n in [10usize, 20, 30] {
        // first generated cycle whose target lies strictly inside its segment
        let (cyc, k) = (0..)
            .find_map(|seed| {
                let f = generate_instance(&GenSpec::new(GenMode::RandomCycle, n, seed)).unwrap();
                let cyc = CycleOrPath::parse_cycle(f.cycle.as_deref().unwrap()).unwrap();
                let k = (f.k_red, f.k_blue);
                (k != cyc.m0_profile().point() && k != cyc.m1_profile().point()).then_some((cyc, k))
            })
            .unwrap();
        group.bench_with_input(BenchmarkId::new("inspection", n), &cyc, |b, cyc| {
            b.iter(|| solve_even_cycle(black_box(cyc), k.0, k.1).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("curve_route", n), &cyc, |b, cyc| {
            b.iter(|| solve_even_cycle_via_curve(black_box(cyc), k.0, k.1).unwrap())
        });
    }
    group.finish();
}

fn crossing(c: &mut Criterion) {
    let cyc = CycleOrPath::parse_cycle("YBYBYRYRYBRBYRBRBR").unwrap();
    let p = imbalance_curve(&cyc).unwrap();
    c.bench_function("crossing_pair", |b| b.iter(|| find_crossing_pair(black_box(&p), LatticePoint::new(2, 1)).unwrap()));
}

fn union(c: &mut Criterion) {
    let colors = |s: &str| s.chars().map(|ch| Color::from_letter(ch).unwrap()).collect::<Vec<_>>();
    let g = ColoredGraph::cycle(&colors("RYRYRYRY")).unwrap().disjoint_union(&ColoredGraph::cycle(&colors("BYBYBYBY")).unwrap());
    let m0 = Matching::new((0..g.edge_count()).filter(|&e| g.color(e) != Color::Yellow));
    let m1 = Matching::new((0..g.edge_count()).filter(|&e| g.color(e) == Color::Yellow));
    c.bench_function("combine_two_cycles", |b| b.iter(|| combine_two_matchings(black_box(&g), &m0, &m1, 2, 2).unwrap()));
}

fn driver(c: &mut Criterion) {
    let mut group = c.benchmark_group("driver");
    group.sample_size(20);
    for n in [6usize, 10, 14] {
        let mut spec = GenSpec::new(GenMode::FeasibleProfile, n, 11);
        spec.edge_density = (1, 4);
        let f = generate_instance(&spec).unwrap();
        group.bench_with_input(BenchmarkId::new("lp", n), &f, |b, f| {
            b.iter(|| solve_lp(&build_lp(&f.graph, f.k_red, f.k_blue, OracleCap::default()).unwrap()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("solve", n), &f, |b, f| b.iter(|| solve(&f.graph, f.k_red, f.k_blue).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, cycles, crossing, union, driver);
criterion_main!(benches);
