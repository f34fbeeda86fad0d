//! Conforming matchings on single colored cycles and paths.
//!
//! Positions are numbered along the shape; even positions form M0 and odd
//! positions form M1. All requirements are checked against the segment
//! between the two profiles.

use crate::curve::{check_injective, imbalance_curve, intersecting_pairs, LatticePoint};
use crate::error::{Error, Result};
use crate::graph::{Color, ColorProfile, CycleOrPath, Matching, ShapeKind};
use num_rational::Rational64;
use num_traits::Zero;

pub type Q = Rational64;

fn q2(p: (i64, i64)) -> (Q, Q) {
    (Q::from_integer(p.0), Q::from_integer(p.1))
}

/// Whether `k` lies on the closed segment [p0, p1].
pub fn on_segment(p0: (i64, i64), p1: (i64, i64), k: (Q, Q)) -> bool {
    let (a, b) = (q2(p0), q2(p1));
    let d = (b.0 - a.0, b.1 - a.1);
    let r = (k.0 - a.0, k.1 - a.1);
    if !(r.0 * d.1 - r.1 * d.0).is_zero() {
        return false;
    }
    let dot = r.0 * d.0 + r.1 * d.1;
    let dd = d.0 * d.0 + d.1 * d.1;
    if dd.is_zero() {
        return r.0.is_zero() && r.1.is_zero();
    }
    dot >= Q::zero() && dot <= dd
}

/// Whether `k` lies on the segment with both endpoints excluded.
pub fn on_open_segment(p0: (i64, i64), p1: (i64, i64), k: (Q, Q)) -> bool {
    on_segment(p0, p1, k) && k != q2(p0) && k != q2(p1)
}

fn check_on_segment(c: &CycleOrPath, k: (Q, Q)) -> Result<()> {
    let (p0, p1) = (c.m0_profile().point(), c.m1_profile().point());
    if on_segment(p0, p1, k) {
        Ok(())
    } else {
        Err(Error::OffSegment(format!(
            "({}, {}) is not on the segment from {p0:?} to {p1:?} for {c}",
            k.0, k.1
        )))
    }
}

fn require_cycle(c: &CycleOrPath) -> Result<()> {
    if c.kind != ShapeKind::EvenCycle || c.len() % 2 == 1 {
        return Err(Error::Shape(format!("{c} is not an even cycle")));
    }
    Ok(())
}

/// Matching of a 2l-cycle exposing vertices a < b (b - a odd). Edge i joins
/// vertices i and i+1.
pub fn near_perfect_matching(n: usize, a: usize, b: usize) -> Matching {
    let mut ids: Vec<usize> = (a + 1..b).step_by(2).collect();
    let mut e = b + 1;
    while e + 1 < a + n {
        ids.push(e % n);
        e += 2;
    }
    Matching::new(ids)
}

/// M0, M1, then near-perfect matchings ordered by exposed vertex pair.
fn candidate_matchings(c: &CycleOrPath) -> impl Iterator<Item = Matching> + '_ {
    let n = c.len();
    [c.m0(), c.m1()].into_iter().chain(
        (0..n).flat_map(move |a| (a + 1..n).step_by(2).map(move |b| near_perfect_matching(n, a, b))),
    )
}

/// Conforming matching on an even cycle with integral requirement: profile
/// exactly (kR, kB) when some edge is yellow, otherwise (kR, kB - 1) at
/// interior points; size at least l - 1.
pub fn solve_even_cycle(c: &CycleOrPath, k_red: i64, k_blue: i64) -> Result<Matching> {
    require_cycle(c)?;
    check_on_segment(c, q2((k_red, k_blue)))?;
    if c.m0_profile().point() == (k_red, k_blue) {
        return Ok(c.m0());
    }
    if c.m1_profile().point() == (k_red, k_blue) {
        return Ok(c.m1());
    }
    let target = if c.has_yellow() { (k_red, k_blue) } else { (k_red, k_blue - 1) };
    candidate_matchings(c)
        .find(|m| c.profile_of(m).point() == target)
        .ok_or_else(|| Error::Internal(format!("no conforming near-perfect matching on {c} for {target:?}")))
}

/// Closes a path into a cycle: even paths by identifying the ends, odd
/// paths by appending a yellow dummy edge at the last position.
fn close_path(c: &CycleOrPath) -> (CycleOrPath, Option<usize>) {
    match c.kind {
        ShapeKind::EvenCycle => (c.clone(), None),
        ShapeKind::EvenPath => (CycleOrPath { kind: ShapeKind::EvenCycle, colors: c.colors.clone() }, None),
        ShapeKind::OddPath => {
            let mut colors = c.colors.clone();
            colors.push(Color::Yellow);
            let dummy = colors.len() - 1;
            (CycleOrPath { kind: ShapeKind::EvenCycle, colors }, Some(dummy))
        }
    }
}

fn strip(m: Matching, dummy: Option<usize>) -> Matching {
    match dummy {
        Some(d) => Matching::new(m.iter().filter(|&i| i != d)),
        None => m,
    }
}

/// Matching with exactly kR red and kB or kB - 1 blue edges, of size at
/// least |M1| - 1.
pub fn solve_path_or_cycle(c: &CycleOrPath, k_red: i64, k_blue: i64) -> Result<Matching> {
    check_on_segment(c, q2((k_red, k_blue)))?;
    let (cyc, dummy) = close_path(c);
    Ok(strip(solve_even_cycle(&cyc, k_red, k_blue)?, dummy))
}

fn ceil(q: Q) -> i64 {
    q.ceil().to_integer()
}

/// Like [`solve_path_or_cycle`] with a rational blue requirement: exactly kR
/// red and ceil(kB) or ceil(kB) - 1 blue edges.
pub fn solve_fractional(c: &CycleOrPath, k_red: i64, k_blue: Q) -> Result<Matching> {
    if k_blue.is_integer() {
        return solve_path_or_cycle(c, k_red, k_blue.to_integer());
    }
    check_on_segment(c, (Q::from_integer(k_red), k_blue))?;
    let (cyc, dummy) = close_path(c);
    let hi = ceil(k_blue);
    let found = candidate_matchings(&cyc).map(|m| strip(m, dummy)).find(|m| {
        let (r, b) = c.profile_of(m).point();
        r == k_red && (b == hi || b == hi - 1)
    });
    found.ok_or_else(|| Error::Internal(format!("no fractional conforming matching on {c} for ({k_red}, {k_blue})")))
}

/// One contraction of a same-colored consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    /// Positions of the pair in the cycle before contraction.
    pub pair: [usize; 2],
    pub color: Color,
    /// Length of the cycle before contraction.
    pub length: usize,
    /// `origin[j]` is the pre-contraction position of position j after it.
    pub origin: Vec<usize>,
}

impl Contraction {
    pub fn delta(&self) -> ColorProfile {
        let mut p = ColorProfile::default();
        p.add(self.color);
        p
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionJournal {
    pub steps: Vec<Contraction>,
}

impl ReductionJournal {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Lifts a matching of the reduced cycle to the original one. Each step
    /// adds one edge of its pair.
    pub fn lift(&self, m: &Matching) -> Matching {
        let mut cur: Vec<usize> = m.ids().to_vec();
        for st in self.steps.iter().rev() {
            let mut up: Vec<usize> = cur.iter().map(|&j| st.origin[j]).collect();
            let pred = (st.pair[0] + st.length - 1) % st.length;
            up.push(if up.contains(&pred) { st.pair[1] } else { st.pair[0] });
            cur = up;
        }
        Matching::new(cur)
    }

    /// Total profile added by lifting.
    pub fn delta(&self) -> ColorProfile {
        self.steps.iter().fold(ColorProfile::default(), |acc, s| acc + s.delta())
    }
}

fn requirement_delta(c: Color) -> (i64, i64) {
    match c {
        Color::Red => (1, 0),
        Color::Blue => (0, 1),
        Color::Yellow => (0, 0),
    }
}

/// Contracts same-colored consecutive pairs until the coloring is proper or
/// two edges remain.
pub fn reduce_to_proper(c: &CycleOrPath, k_red: i64, k_blue: i64) -> Result<(CycleOrPath, i64, i64, ReductionJournal)> {
    require_cycle(c)?;
    check_on_segment(c, q2((k_red, k_blue)))?;
    let mut colors = c.colors.clone();
    let (mut kr, mut kb) = (k_red, k_blue);
    let mut journal = ReductionJournal::default();
    while colors.len() >= 4 {
        let n = colors.len();
        let Some(i) = (0..n).find(|&i| colors[i] == colors[(i + 1) % n]) else { break };
        let origin: Vec<usize> = if i + 1 < n {
            (0..n).filter(|&j| j != i && j != i + 1).collect()
        } else {
            // Wrap pair (n-1, 0): keep parity by starting at n-2.
            std::iter::once(n - 2).chain(1..n - 2).collect()
        };
        let color = colors[i];
        let (dr, db) = requirement_delta(color);
        kr -= dr;
        kb -= db;
        journal.steps.push(Contraction { pair: [i, (i + 1) % n], color, length: n, origin: origin.clone() });
        colors = origin.iter().map(|&j| colors[j]).collect();
    }
    let reduced = CycleOrPath::even_cycle(colors)?;
    Ok((reduced, kr, kb, journal))
}

pub fn is_proper(c: &CycleOrPath) -> bool {
    let n = c.len();
    let wrap = c.is_cycle() && n >= 2;
    (0..n.saturating_sub(1)).all(|i| c.colors[i] != c.colors[i + 1]) && (!wrap || c.colors[n - 1] != c.colors[0])
}

/// Net profile change along positions from..to (mod n): odd positions count
/// positively, even ones negatively.
pub fn path_delta(c: &CycleOrPath, from: usize, to: usize) -> (i64, i64) {
    let n = c.len();
    let (mut r, mut b) = (0, 0);
    for p in from..to {
        let s = if p % 2 == 1 { 1 } else { -1 };
        match c.colors[p % n] {
            Color::Red => r += s,
            Color::Blue => b += s,
            Color::Yellow => {}
        }
    }
    (r, b)
}

/// The good path minimizing (v, u): edges 2v..2u-1 whose net profile
/// change takes p_M0 to (kR, kB).
pub fn find_good_path(c: &CycleOrPath, k_red: i64, k_blue: i64) -> Result<Option<(usize, usize)>> {
    Ok(good_paths(c, k_red, k_blue)?.into_iter().next())
}

/// All good paths (v, u) with v < l, sorted by (v, u).
pub fn good_paths(c: &CycleOrPath, k_red: i64, k_blue: i64) -> Result<Vec<(usize, usize)>> {
    require_cycle(c)?;
    let curve = imbalance_curve(c)?;
    let (p0, p1) = (c.m0_profile().point(), c.m1_profile().point());
    if !on_open_segment(p0, p1, q2((k_red, k_blue))) {
        return Err(Error::OffSegment(format!("({k_red}, {k_blue}) is not strictly between {p0:?} and {p1:?}")));
    }
    let q = LatticePoint::new(k_red - p0.0, k_blue - p0.1);
    let l = curve.period_length();
    let mut pairs: Vec<(usize, usize)> = intersecting_pairs(&curve, q)?
        .into_iter()
        .filter(|&(_, v)| v < l)
        .map(|(u, v)| (v as usize, u as usize))
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// Odd edges of a good path together with the even edges outside it. The
/// single adjacent pair is (2u - 1, 2u mod n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiMatching {
    pub edge_ids: Vec<usize>,
    pub adjacent_pair: (usize, usize),
}

pub fn quasi_matching_from_good_path(
    c: &CycleOrPath,
    v: usize,
    u: usize,
    k_red: i64,
    k_blue: i64,
) -> Result<(QuasiMatching, Matching)> {
    require_cycle(c)?;
    let n = c.len();
    let l = n / 2;
    if !(v < u && u < v + l) {
        return Err(Error::Precondition(format!("({v}, {u}) is not an admissible index pair")));
    }
    let p0 = c.m0_profile().point();
    let d = path_delta(c, 2 * v, 2 * u);
    if (p0.0 + d.0, p0.1 + d.1) != (k_red, k_blue) {
        return Err(Error::Precondition(format!("path ({v}, {u}) has change {d:?}, not a good path")));
    }
    let mut ids: Vec<usize> = (2 * v + 1..2 * u).step_by(2).map(|p| p % n).collect();
    ids.extend((2 * u..2 * v + n - 1).step_by(2).map(|p| p % n));
    ids.sort_unstable();
    let pair = ((2 * u - 1) % n, (2 * u) % n);
    let qm = QuasiMatching { edge_ids: ids.clone(), adjacent_pair: pair };
    let col = |p: usize| c.colors[p];
    let drop = if col(pair.0) == Color::Yellow {
        pair.0
    } else if col(pair.1) == Color::Yellow {
        pair.1
    } else if col(pair.0) != Color::Red {
        pair.0
    } else {
        pair.1
    };
    let m = Matching::new(ids.into_iter().filter(|&p| p != drop));
    Ok((qm, m))
}

/// Matching for a properly colored red-blue cycle built from the first kR
/// red edges and the blue edges they leave free.
pub fn no_yellow_matching(c: &CycleOrPath, k_red: i64) -> Result<Matching> {
    require_cycle(c)?;
    if c.has_yellow() || !is_proper(c) {
        return Err(Error::Precondition(format!("{c} is not a proper red-blue cycle")));
    }
    let n = c.len();
    let l = (n / 2) as i64;
    if !(1..l).contains(&k_red) {
        return Err(Error::OffSegment(format!("kR = {k_red} is not interior")));
    }
    let k = k_red as usize;
    let start = if c.colors[0] == Color::Red { 0 } else { 1 };
    let reds = (0..k).map(|i| start + 2 * i);
    let last = start + 2 * k - 2;
    let blues = (last + 3..start + n - 2).step_by(2).map(|p| p % n);
    Ok(Matching::new(reds.chain(blues)))
}

/// How the constructive route produced its answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveRoute {
    Endpoint,
    /// Red-blue alternating after contraction.
    NoYellow,
    /// Good path (v, u) after rotating positions by `shift`.
    GoodPath { shift: usize, v: usize, u: usize, injective: bool },
    /// No good path with a yellow edge in its adjacent pair.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveTrace {
    pub contractions: usize,
    pub route: CurveRoute,
}

fn rotate(c: &CycleOrPath, shift: usize) -> CycleOrPath {
    let n = c.len();
    CycleOrPath { kind: c.kind, colors: (0..n).map(|i| c.colors[(i + shift) % n]).collect() }
}

/// Constructive route through contraction and good paths, used to
/// cross-check [`solve_even_cycle`]. Tries every even rotation and every
/// good path for one whose adjacent pair holds a yellow edge.
pub fn solve_even_cycle_via_curve(c: &CycleOrPath, k_red: i64, k_blue: i64) -> Result<(Matching, CurveTrace)> {
    require_cycle(c)?;
    check_on_segment(c, q2((k_red, k_blue)))?;
    let (p0, p1) = (c.m0_profile().point(), c.m1_profile().point());
    if (k_red, k_blue) == p0 || (k_red, k_blue) == p1 {
        let m = if (k_red, k_blue) == p0 { c.m0() } else { c.m1() };
        return Ok((m, CurveTrace { contractions: 0, route: CurveRoute::Endpoint }));
    }
    let (red, kr, kb, journal) = reduce_to_proper(c, k_red, k_blue)?;
    let contractions = journal.steps.len();
    let done = |m: Matching, route| Ok((journal.lift(&m), CurveTrace { contractions, route }));
    let (r0, r1) = (red.m0_profile().point(), red.m1_profile().point());
    if (kr, kb) == r0 || (kr, kb) == r1 || !is_proper(&red) {
        return done(solve_even_cycle(&red, kr, kb)?, CurveRoute::Fallback);
    }
    if !red.has_yellow() {
        if c.has_yellow() {
            // contraction removed every yellow edge; the red-blue shortcut
            // would give up one blue edge the original cycle can keep
            return Ok((solve_even_cycle(c, k_red, k_blue)?, CurveTrace { contractions, route: CurveRoute::Fallback }));
        }
        return done(no_yellow_matching(&red, kr)?, CurveRoute::NoYellow);
    }
    let n = red.len();
    for shift in (0..n).step_by(2) {
        let rc = rotate(&red, shift);
        let injective = check_injective(&imbalance_curve(&rc)?);
        for (v, u) in good_paths(&rc, kr, kb)? {
            let (_, m) = quasi_matching_from_good_path(&rc, v, u, kr, kb)?;
            if rc.profile_of(&m).point() == (kr, kb) {
                let back = Matching::new(m.iter().map(|p| (p + shift) % n));
                return done(back, CurveRoute::GoodPath { shift, v, u, injective });
            }
        }
    }
    done(solve_even_cycle(&red, kr, kb)?, CurveRoute::Fallback)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str) -> CycleOrPath {
        CycleOrPath::parse_cycle(s).unwrap()
    }

    #[test]
    fn near_perfect_shapes() {
        assert_eq!(near_perfect_matching(4, 0, 1), Matching::new([2]));
        assert_eq!(near_perfect_matching(6, 0, 3), Matching::new([1, 4]));
        assert_eq!(near_perfect_matching(6, 2, 5), Matching::new([3, 0]));
        let c = cyc("RBRBRB");
        for a in 0..6 {
            for b in (a + 1..6).step_by(2) {
                let m = near_perfect_matching(6, a, b);
                assert_eq!(m.len(), 2);
                assert!(c.is_matching(&m));
            }
        }
    }

    #[test]
    fn rbyb_cycle() {
        let c = cyc("RBYBRBYB");
        let m = solve_even_cycle(&c, 1, 2).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(c.profile_of(&m).point(), (1, 2));
        assert!(c.is_matching(&m));
    }

    #[test]
    fn eighteen_edge_cycle() {
        let c = cyc("YBYBYRYRYBRBYRBRBR");
        let m = solve_even_cycle(&c, 3, 3).unwrap();
        assert_eq!(m.len(), 8);
        assert_eq!(c.profile_of(&m), ColorProfile::new(3, 3, 2));
        let witness = Matching::new([0, 2, 5, 7, 9, 11, 13, 16]);
        assert!(c.is_matching(&witness));
        assert_eq!(c.profile_of(&witness), ColorProfile::new(3, 3, 2));
    }

    #[test]
    fn endpoints_return_perfect_matchings() {
        let c = cyc("RBYBRBYB");
        let p0 = c.m0_profile().point();
        assert_eq!(solve_even_cycle(&c, p0.0, p0.1).unwrap(), c.m0());
        let p1 = c.m1_profile().point();
        assert_eq!(solve_even_cycle(&c, p1.0, p1.1).unwrap(), c.m1());
        assert!(matches!(solve_even_cycle(&c, 3, 0), Err(Error::OffSegment(_))));
    }

    #[test]
    fn tight_odd_path() {
        let p = CycleOrPath::parse_path("BRYRYBYBYRYRB").unwrap();
        let m = solve_path_or_cycle(&p, 3, 2).unwrap();
        assert_eq!(m.len(), 5);
        let (r, b) = p.profile_of(&m).point();
        assert!(r == 3 && (b == 2 || b == 1));
        assert!(p.is_matching(&m));
    }

    #[test]
    fn even_path() {
        let p = CycleOrPath::parse_path("RB").unwrap();
        assert_eq!(solve_path_or_cycle(&p, 1, 0).unwrap(), Matching::new([0]));
    }

    #[test]
    fn fractional_blue_target() {
        let c = cyc("YBYBYRYRYR");
        let m = solve_fractional(&c, 1, Q::new(2, 3)).unwrap();
        assert_eq!(m.len(), 4);
        let (r, b) = c.profile_of(&m).point();
        assert!(r == 1 && (b == 1 || b == 0));
        let w = Matching::new([0, 3, 5, 8]);
        assert_eq!(c.profile_of(&w), ColorProfile::new(1, 1, 2));
        assert_eq!(solve_fractional(&c, 0, Q::from_integer(0)).unwrap(), c.m0());
    }

    #[test]
    fn reduction_examples() {
        let (r, kr, kb, j) = reduce_to_proper(&cyc("RRBYBY"), 1, 1).unwrap();
        assert_eq!((r.to_string().as_str(), kr, kb), ("BYBY", 0, 1));
        assert_eq!(j.steps.len(), 1);
        assert_eq!(j.steps[0].color, Color::Red);
        assert!(matches!(reduce_to_proper(&cyc("RRBYBY"), 2, 1), Err(Error::OffSegment(_))));
        let (r, _, _, j) = reduce_to_proper(&cyc("RBYB"), 1, 0).unwrap();
        assert_eq!(r, cyc("RBYB"));
        assert!(j.is_empty());
        let (r, _, _, j) = reduce_to_proper(&cyc("RBRB"), 1, 1).unwrap();
        assert_eq!(r, cyc("RBRB"));
        assert!(j.is_empty());
    }

    #[test]
    fn wrap_contraction_lifts() {
        let c = cyc("RBYBYR");
        let (r, kr, kb, j) = reduce_to_proper(&c, 1, 1).unwrap();
        assert!(is_proper(&r));
        let m = solve_even_cycle(&r, kr, kb).unwrap();
        let up = j.lift(&m);
        assert!(c.is_matching(&up));
        assert_eq!(c.profile_of(&up).point(), (1, 1));
    }

    #[test]
    fn good_paths_on_eighteen_edge_cycle() {
        let c = cyc("YBYBYRYRYBRBYRBRBR");
        let all = good_paths(&c, 3, 3).unwrap();
        assert_eq!(all[0], (1, 4));
        assert!(all.contains(&(2, 5)));
        assert!(all.contains(&(3, 8)));
        assert_eq!(path_delta(&c, 4, 10), (2, 1));
        assert_eq!(path_delta(&c, 6, 16), (2, 1));
        let (qm, m) = quasi_matching_from_good_path(&c, 2, 5, 3, 3).unwrap();
        assert_eq!(qm.edge_ids, vec![0, 2, 5, 7, 9, 10, 12, 14, 16]);
        assert_eq!(c.profile_of(&Matching::new(qm.edge_ids.clone())).point(), (3, 3));
        assert_eq!(m.len(), 8);
        assert!(!m.contains(9));
        assert_eq!(c.profile_of(&m).point(), (3, 2));
    }

    #[test]
    fn good_path_on_four_cycle() {
        let c = cyc("RBRB");
        assert_eq!(find_good_path(&c, 1, 1).unwrap(), Some((0, 1)));
        let (qm, m) = quasi_matching_from_good_path(&c, 0, 1, 1, 1).unwrap();
        assert_eq!(qm.edge_ids, vec![1, 2]);
        assert_eq!(m, Matching::new([2]));
        assert!(quasi_matching_from_good_path(&c, 0, 1, 2, 0).is_err());
    }

    #[test]
    fn no_yellow_construction() {
        let c = cyc("RBRBRBRB");
        let m = no_yellow_matching(&c, 2).unwrap();
        assert!(c.is_matching(&m));
        assert_eq!(c.profile_of(&m).point(), (2, 1));
        let c = cyc("BRBRBR");
        let m = no_yellow_matching(&c, 1).unwrap();
        assert!(c.is_matching(&m));
        assert_eq!(c.profile_of(&m).point(), (1, 1));
    }

    #[test]
    fn curve_route_agrees() {
        for (s, kr, kb) in [("YBYBYRYRYBRBYRBRBR", 3, 3), ("RRBYBY", 1, 1), ("RBRBRBRB", 2, 2), ("RBYBRBYB", 1, 2)] {
            let c = cyc(s);
            let (m, _) = solve_even_cycle_via_curve(&c, kr, kb).unwrap();
            assert!(c.is_matching(&m));
            assert!(m.len() + 1 >= c.len() / 2);
            let target = if c.has_yellow() { (kr, kb) } else { (kr, kb - 1) };
            assert_eq!(c.profile_of(&m).point(), target, "{s}");
        }
    }
}
