use proptest::prelude::*;
use rbymatch::graph::{color_profile, symdiff_components, validate_matching, ShapeKind};
use rbymatch::io::parse_instance;
use rbymatch::oracle::{count_matchings, enumerate_matchings, exact_optimum, max_matching_size};
use rbymatch::{generate_instance, Color, ColorProfile, ColoredGraph, GenMode, GenSpec, Matching, OracleCap};

fn color(i: u8) -> Color {
    [Color::Red, Color::Blue, Color::Yellow][i as usize % 3]
}

fn graph(max_n: usize, max_e: usize) -> impl Strategy<Value = ColoredGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0..3u8), 0..max_e).prop_map(move |es| {
            ColoredGraph::from_edges(n, es.into_iter().filter(|(u, v, _)| u != v).map(|(u, v, c)| (u, v, color(c))))
                .unwrap()
        })
    })
}

fn all_matchings(g: &ColoredGraph) -> Vec<Matching> {
    enumerate_matchings(g, None, OracleCap::default()).unwrap().collect()
}

fn fib(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symdiff_alternates(g in graph(9, 18), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let ms = all_matchings(&g);
        let (a, b) = (&ms[i.index(ms.len())], &ms[j.index(ms.len())]);
        for comp in symdiff_components(&g, a, b).unwrap() {
            let n = comp.edge_ids.len();
            for p in 0..n {
                prop_assert_eq!(comp.in_first[p], a.contains(comp.edge_ids[p]));
                if p + 1 < n {
                    prop_assert_ne!(comp.in_first[p], comp.in_first[p + 1]);
                }
            }
            if comp.shape.kind == ShapeKind::EvenCycle {
                prop_assert!(n % 2 == 0);
                prop_assert_eq!(comp.vertices.len(), n);
            } else {
                prop_assert_eq!(comp.vertices.len(), n + 1);
            }
        }
    }

    #[test]
    fn profile_additive_and_bounded(g in graph(9, 18), i in any::<prop::sample::Index>()) {
        let ms = all_matchings(&g);
        let m = &ms[i.index(ms.len())];
        let p = color_profile(&g, m).unwrap();
        let half = m.len() / 2;
        let lo = Matching::new(m.ids()[..half].iter().copied());
        let hi = Matching::new(m.ids()[half..].iter().copied());
        prop_assert_eq!(color_profile(&g, &lo).unwrap() + color_profile(&g, &hi).unwrap(), p);
        let t = g.color_totals();
        prop_assert!(p.red <= t.red && p.blue <= t.blue && p.yellow <= t.yellow);
    }

    #[test]
    fn exact_optimum_is_maximal(g in graph(8, 16), kr in 0i64..4, kb in 0i64..4) {
        let best = exact_optimum(&g, kr, kb, OracleCap::default()).unwrap();
        let sizes: Vec<usize> = all_matchings(&g).into_iter()
            .filter(|m| color_profile(&g, m).unwrap().point() == (kr, kb))
            .map(|m| m.len())
            .collect();
        match best {
            None => prop_assert!(sizes.is_empty()),
            Some(m) => {
                prop_assert!(validate_matching(&g, m.ids()));
                prop_assert_eq!(color_profile(&g, &m).unwrap().point(), (kr, kb));
                prop_assert_eq!(Some(m.len()), sizes.into_iter().max());
            }
        }
    }

    #[test]
    fn max_matching_is_largest_enumerated(g in graph(9, 20)) {
        let best = all_matchings(&g).iter().map(|m| m.len()).max().unwrap();
        prop_assert_eq!(max_matching_size(&g, OracleCap::default()).unwrap(), best);
    }

    #[test]
    fn counts_on_paths_and_cycles(n in 1usize..20, cs in prop::collection::vec(0..3u8, 20)) {
        let colors: Vec<Color> = cs[..n].iter().map(|&c| color(c)).collect();
        // matchings of a path with n edges: F(n + 2); of a cycle with n edges: L(n)
        prop_assert_eq!(count_matchings(&ColoredGraph::path(&colors), OracleCap::default()).unwrap(), fib(n + 2));
        if n >= 3 {
            let lucas = fib(n - 1) + fib(n + 1);
            prop_assert_eq!(count_matchings(&ColoredGraph::cycle(&colors).unwrap(), OracleCap::default()).unwrap(), lucas);
        }
    }

    #[test]
    fn generated_instances_round_trip(mode in 0..3usize, n in 2usize..10, seed in any::<u64>()) {
        let mode = [GenMode::RandomGraph, GenMode::RandomCycle, GenMode::FeasibleProfile][mode];
        let n = if mode == GenMode::RandomCycle { 2 * (n / 2) } else { n };
        let spec = GenSpec::new(mode, n, seed);
        let f = generate_instance(&spec).unwrap();
        prop_assert_eq!(&parse_instance(&f.serialize()).unwrap(), &f);
        prop_assert_eq!(generate_instance(&spec).unwrap(), f);
    }
}

#[test]
fn empty_profile_is_zero() {
    let g = ColoredGraph::new(3);
    assert_eq!(color_profile(&g, &Matching::empty()).unwrap(), ColorProfile::default());
}
