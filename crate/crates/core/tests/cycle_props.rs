use proptest::prelude::*;
use rbymatch::cycle::{
    good_paths, is_proper, no_yellow_matching, quasi_matching_from_good_path, reduce_to_proper, solve_even_cycle,
    solve_even_cycle_via_curve, solve_path_or_cycle,
};
use rbymatch::generate::segment_points;
use rbymatch::oracle::{conforming_optimum_size, enumerate_matchings};
use rbymatch::{Color, CycleOrPath, OracleCap};

fn color(i: u8) -> Color {
    [Color::Red, Color::Blue, Color::Yellow][i as usize % 3]
}

fn any_cycle(max_half: usize) -> impl Strategy<Value = CycleOrPath> {
    (2..=max_half)
        .prop_flat_map(|h| prop::collection::vec(0..3u8, 2 * h))
        .prop_map(|v| CycleOrPath::even_cycle(v.into_iter().map(color).collect()).unwrap())
}

fn proper_cycle(max_half: usize) -> impl Strategy<Value = CycleOrPath> {
    (2..=max_half, prop::collection::vec(0..2u8, 2 * max_half), 0..3u8).prop_filter_map("wrap", |(h, picks, first)| {
        let n = 2 * h;
        let mut cols = vec![color(first)];
        for i in 1..n {
            let opts: Vec<Color> = [Color::Red, Color::Blue, Color::Yellow].into_iter().filter(|&c| c != cols[i - 1]).collect();
            cols.push(opts[picks[i] as usize]);
        }
        (cols[0] != cols[n - 1]).then(|| CycleOrPath::even_cycle(cols).unwrap())
    })
}

fn with_target(c: CycleOrPath) -> impl Strategy<Value = (CycleOrPath, (i64, i64))> {
    let pts = segment_points(&c);
    (Just(c), prop::sample::select(pts))
}

fn interior_target(c: CycleOrPath) -> Option<(CycleOrPath, Vec<(i64, i64)>)> {
    let (p0, p1) = (c.m0_profile().point(), c.m1_profile().point());
    let pts: Vec<_> = segment_points(&c).into_iter().filter(|&k| k != p0 && k != p1).collect();
    (!pts.is_empty()).then_some((c, pts))
}

fn check_contract(c: &CycleOrPath, k: (i64, i64), m: &rbymatch::Matching) -> Result<(), TestCaseError> {
    let l = c.len() / 2;
    prop_assert!(c.is_matching(m));
    prop_assert!(m.len() + 1 >= l, "size {} for half-length {}", m.len(), l);
    let got = c.profile_of(m).point();
    let (p0, p1) = (c.m0_profile().point(), c.m1_profile().point());
    if c.has_yellow() || k == p0 || k == p1 {
        prop_assert_eq!(got, k);
    } else {
        prop_assert_eq!(got, (k.0, k.1 - 1));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn even_cycle_contract((c, k) in any_cycle(10).prop_flat_map(with_target)) {
        let m = solve_even_cycle(&c, k.0, k.1).unwrap();
        check_contract(&c, k, &m)?;
        let g = c.graph();
        let found = enumerate_matchings(&g, None, OracleCap::default()).unwrap()
            .any(|x| x.len() == m.len() && c.profile_of(&x) == c.profile_of(&m));
        prop_assert!(found);
    }

    #[test]
    fn curve_route_agrees((c, k) in any_cycle(9).prop_flat_map(with_target)) {
        let (m, _) = solve_even_cycle_via_curve(&c, k.0, k.1).unwrap();
        check_contract(&c, k, &m)?;
    }

    #[test]
    fn lift_keeps_requirement((c, k) in any_cycle(12).prop_flat_map(with_target)) {
        let (red, kr, kb, journal) = reduce_to_proper(&c, k.0, k.1).unwrap();
        let m = solve_even_cycle(&red, kr, kb).unwrap();
        let lifted = journal.lift(&m);
        prop_assert!(c.is_matching(&lifted));
        let rp = red.profile_of(&m).point();
        let op = c.profile_of(&lifted).point();
        prop_assert_eq!((op.0 - rp.0, op.1 - rp.1), (k.0 - kr, k.1 - kb));
    }

    #[test]
    fn quasi_matching_profile_exact((c, pts) in proper_cycle(12).prop_filter_map("no interior point", interior_target),
                                    pick in any::<prop::sample::Index>()) {
        let k = *pick.get(&pts);
        prop_assert!(is_proper(&c));
        for (v, u) in good_paths(&c, k.0, k.1).unwrap() {
            let (q, _) = quasi_matching_from_good_path(&c, v, u, k.0, k.1).unwrap();
            let mut p = rbymatch::ColorProfile::default();
            for &e in &q.edge_ids {
                p.add(c.colors[e]);
            }
            prop_assert_eq!(p.point(), k);
        }
    }

    #[test]
    fn red_blue_alternating(h in 2usize..15, kr_pick in any::<prop::sample::Index>()) {
        let c = CycleOrPath::even_cycle((0..2 * h).map(|i| if i % 2 == 0 { Color::Red } else { Color::Blue }).collect()).unwrap();
        let kr = 1 + kr_pick.index(h - 1) as i64;
        let m = no_yellow_matching(&c, kr).unwrap();
        check_contract(&c, (kr, h as i64 - kr), &m)?;
    }
}

fn tight(c: CycleOrPath, kr: i64, kb: i64, expect: usize) {
    let m = solve_path_or_cycle(&c, kr, kb).unwrap();
    assert!(c.is_matching(&m));
    assert_eq!(m.len(), expect, "{c}");
    let opt = conforming_optimum_size(&c.graph(), kr, kb, OracleCap::default()).unwrap();
    assert_eq!(opt, Some(expect), "{c}");
}

#[test]
fn bound_is_tight_for_odd_path_even_path_and_cycle() {
    let odd = CycleOrPath::parse_path("BRYRYBYBYRYRB").unwrap();
    assert_eq!((odd.m0().len(), odd.m1().len()), (7, 6));
    tight(odd, 3, 2, 5);
    tight(CycleOrPath::parse_path("BRYRYBYBYRYRBY").unwrap(), 3, 2, 6);
}
