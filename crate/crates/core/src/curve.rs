/*!
Imbalance curves of colored cycles and their periodic extensions.

A curve is a polyline parametrized so that breakpoint `i` sits at parameter
`i`. Its periodic extension repeats the polyline shifted by
`delta = f(tau) - f(0)` per period. For an injective extension the plane
splits into two sides, which are told apart by ray parity.
*/

use crate::error::{Error, Result};
use crate::graph::{Color, CycleOrPath, ShapeKind};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use std::fmt;

pub type Q = Rational64;

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn to_plane(self) -> PlanePoint {
        PlanePoint::new(qi(self.x), qi(self.y))
    }
}

impl std::ops::Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub x: Q,
    pub y: Q,
}

impl PlanePoint {
    pub fn new(x: Q, y: Q) -> Self {
        PlanePoint { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        PlanePoint::new(qi(x), qi(y))
    }

    pub fn dot(self, o: PlanePoint) -> Q {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: PlanePoint) -> Q {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, k: Q) -> PlanePoint {
        PlanePoint::new(self.x * k, self.y * k)
    }

    pub fn rot90_left(self) -> PlanePoint {
        PlanePoint::new(-self.y, self.x)
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_lattice(self) -> Option<LatticePoint> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(LatticePoint::new(self.x.to_integer(), self.y.to_integer()))
        } else {
            None
        }
    }
}

impl std::ops::Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Move of the curve for the color pair (even edge, odd edge).
pub fn move_for_pair(even: Color, odd: Color) -> Option<LatticePoint> {
    use Color::*;
    let m = match (even, odd) {
        (Red, Yellow) => (-1, 0),
        (Yellow, Red) => (1, 0),
        (Blue, Yellow) => (0, -1),
        (Yellow, Blue) => (0, 1),
        (Red, Blue) => (-1, 1),
        (Blue, Red) => (1, -1),
        _ => return None,
    };
    Some(LatticePoint::new(m.0, m.1))
}

/// Inverse of [`move_for_pair`].
pub fn pair_for_move(m: LatticePoint) -> Option<(Color, Color)> {
    use Color::*;
    Some(match (m.x, m.y) {
        (-1, 0) => (Red, Yellow),
        (1, 0) => (Yellow, Red),
        (0, -1) => (Blue, Yellow),
        (0, 1) => (Yellow, Blue),
        (-1, 1) => (Red, Blue),
        (1, -1) => (Blue, Red),
        _ => return None,
    })
}

pub const MOVES: [LatticePoint; 6] = [
    LatticePoint::new(-1, 0),
    LatticePoint::new(1, 0),
    LatticePoint::new(0, -1),
    LatticePoint::new(0, 1),
    LatticePoint::new(-1, 1),
    LatticePoint::new(1, -1),
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolyline {
    points: Vec<LatticePoint>,
}

impl LatticePolyline {
    pub fn from_points(points: Vec<LatticePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Shape("a polyline needs at least two breakpoints".into()));
        }
        Ok(LatticePolyline { points })
    }

    /// Starts at the origin.
    pub fn from_moves(moves: &[LatticePoint]) -> Result<Self> {
        let mut pts = vec![LatticePoint::new(0, 0)];
        for &m in moves {
            let last = *pts.last().unwrap();
            pts.push(last + m);
        }
        LatticePolyline::from_points(pts)
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn period_length(&self) -> i64 {
        self.points.len() as i64 - 1
    }

    pub fn period_shift(&self) -> LatticePoint {
        self.points[self.points.len() - 1] - self.points[0]
    }

    pub fn moves(&self) -> Vec<LatticePoint> {
        self.points.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// d^∞ at an integer parameter.
    pub fn eval_int(&self, t: i64) -> LatticePoint {
        let l = self.period_length();
        let (k, r) = t.div_mod_floor(&l);
        k * self.period_shift() + self.points[r as usize]
    }

    pub fn to_curve(&self) -> PolyCurve {
        PolyCurve { points: self.points.iter().map(|p| p.to_plane()).collect() }
    }
}

/// Curve of a properly paired even cycle: one lattice move per edge pair.
pub fn imbalance_curve(c: &CycleOrPath) -> Result<LatticePolyline> {
    if c.kind != ShapeKind::EvenCycle {
        return Err(Error::Shape("imbalance curves are defined for even cycles".into()));
    }
    if c.is_empty() || c.len() % 2 == 1 {
        return Err(Error::Shape(format!("cycle length {} is not a positive even number", c.len())));
    }
    let moves = c
        .colors
        .chunks(2)
        .enumerate()
        .map(|(t, p)| {
            move_for_pair(p[0], p[1]).ok_or_else(|| {
                Error::ImproperColoring(format!("edges {} and {} are both {}", 2 * t, 2 * t + 1, p[0]))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LatticePolyline::from_moves(&moves)
}

pub fn periodic_eval(p: &LatticePolyline, t: Q) -> PlanePoint {
    p.to_curve().periodic_eval(t)
}

/// Exact lattice test for injectivity of d^∞.
pub fn check_injective(p: &LatticePolyline) -> bool {
    let delta = p.period_shift();
    if delta == LatticePoint::new(0, 0) {
        return false;
    }
    let l = p.period_length();
    let kmax = 2 * l / delta.x.abs().max(delta.y.abs());
    let pts = &p.points[..l as usize];
    for k in -kmax..=kmax {
        let shift = k * delta;
        for (u, &du) in pts.iter().enumerate() {
            for (v, &dv) in pts.iter().enumerate() {
                if (u != v || k != 0) && du == dv + shift {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    SideA,
    SideB,
    OnCurve,
}

/// Contact between two segments, in the parameters of each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hit {
    None,
    Point { s: Q, t: Q },
    /// `t0` and `t1` correspond to `s0 < s1`.
    Overlap { s0: Q, s1: Q, t0: Q, t1: Q },
}

fn param_on(p0: PlanePoint, p1: PlanePoint, x: PlanePoint) -> Q {
    let r = p1 - p0;
    (x - p0).dot(r) / r.dot(r)
}

pub fn intersect_segments(p0: PlanePoint, p1: PlanePoint, q0: PlanePoint, q1: PlanePoint) -> Hit {
    let r = p1 - p0;
    let w = q1 - q0;
    let d = q0 - p0;
    let denom = r.cross(w);
    let unit = |a: Q| a >= qi(0) && a <= qi(1);
    if !denom.is_zero() {
        let s = d.cross(w) / denom;
        let t = d.cross(r) / denom;
        return if unit(s) && unit(t) { Hit::Point { s, t } } else { Hit::None };
    }
    if !d.cross(r).is_zero() {
        return Hit::None;
    }
    let a0 = param_on(p0, p1, q0);
    let a1 = param_on(p0, p1, q1);
    let lo = a0.min(a1).max(qi(0));
    let hi = a0.max(a1).min(qi(1));
    if lo > hi {
        return Hit::None;
    }
    let at = |s: Q| param_on(q0, q1, p0 + r.scale(s));
    if lo == hi {
        Hit::Point { s: lo, t: at(lo) }
    } else {
        Hit::Overlap { s0: lo, s1: hi, t0: at(lo), t1: at(hi) }
    }
}

/// General polyline with breakpoint i at parameter i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCurve {
    pub points: Vec<PlanePoint>,
}

impl PolyCurve {
    pub fn new(points: Vec<PlanePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Shape("a polyline needs at least two breakpoints".into()));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Shape("zero-length segment".into()));
        }
        Ok(PolyCurve { points })
    }

    pub fn tau(&self) -> i64 {
        self.points.len() as i64 - 1
    }

    pub fn shift(&self) -> PlanePoint {
        self.points[self.points.len() - 1] - self.points[0]
    }

    /// f(t) for t in [0, tau].
    pub fn eval(&self, t: Q) -> PlanePoint {
        let tau = self.tau();
        let i = t.floor().to_integer().clamp(0, tau - 1);
        let f = t - qi(i);
        let a = self.points[i as usize];
        let b = self.points[i as usize + 1];
        a + (b - a).scale(f)
    }

    /// f^∞(t) = k (f(tau) - f(0)) + f(r) with t = k tau + r.
    pub fn periodic_eval(&self, t: Q) -> PlanePoint {
        let tau = qi(self.tau());
        let k = (t / tau).floor();
        let r = t - k * tau;
        self.shift().scale(k) + self.eval(r)
    }

    /// The piece of f^∞ on [k, k+1].
    pub fn segment(&self, k: i64) -> (PlanePoint, PlanePoint) {
        let (p, r) = k.div_mod_floor(&self.tau());
        let off = self.shift().scale(qi(p));
        (self.points[r as usize] + off, self.points[r as usize + 1] + off)
    }

    /// Exact segment-based injectivity test of f^∞.
    pub fn is_injective(&self) -> bool {
        let Ok(pc) = PeriodicCurve::new(self.clone()) else { return false };
        for i in 0..self.tau() {
            let (a, b) = self.segment(i);
            for (k, c, d) in pc.segments_along(a, b) {
                if k == i {
                    continue;
                }
                let hit = intersect_segments(a, b, c, d);
                let ok = match hit {
                    Hit::None => true,
                    Hit::Point { s, t } if k == i + 1 => s == qi(1) && t == qi(0),
                    Hit::Point { s, t } if k == i - 1 => s == qi(0) && t == qi(1),
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Crossing pair of (f^∞, f + q - f(0)) minimizing (v, u).
    pub fn find_crossing_pair(&self, q: PlanePoint) -> Result<Certificate> {
        let pc = PeriodicCurve::new(self.clone())?;
        if !self.is_injective() {
            return Err(Error::Precondition("periodic extension is not injective".into()));
        }
        let rel = q - self.points[0];
        let delta = self.shift();
        if !rel.cross(delta).is_zero() || rel.dot(delta) <= qi(0) || rel.dot(delta) >= delta.dot(delta) {
            return Err(Error::Precondition(format!("q = {q} is not strictly inside the period segment")));
        }
        let tr = TranslatedCurve::new(&pc, q);
        if (0..self.tau()).any(|j| {
            let (a, b) = self.segment(j);
            point_on_segment(a, b, q).is_some()
        }) {
            return Err(Error::Precondition(format!("q = {q} lies on the curve")));
        }
        let tau = qi(self.tau());
        let mut cands: Vec<(Q, Q)> = Vec::new();
        for j in 0..self.tau() {
            for c in tr.contacts(j) {
                let mut push = |tg: Q, tf: Q| {
                    if tg > qi(0) && tg < tau && tg < tf && tf < tg + tau {
                        cands.push((tg, tf));
                    }
                };
                match c {
                    Contact::Point { tg, tf } => push(tg, tf),
                    Contact::Overlap { tg0, tg1, tf0, tf1 } => {
                        push(tg0, tf0);
                        push(tg1, tf1);
                    }
                }
            }
        }
        cands.sort();
        cands.dedup();
        for (v, u) in cands {
            if let Some(cert) = tr.certify(u, v) {
                return Ok(cert);
            }
        }
        Err(Error::NoCrossingPair(format!("no certified crossing for q = {q}")))
    }
}

fn point_on_segment(a: PlanePoint, b: PlanePoint, p: PlanePoint) -> Option<Q> {
    let r = b - a;
    if !(p - a).cross(r).is_zero() {
        return None;
    }
    let s = param_on(a, b, p);
    if s >= qi(0) && s <= qi(1) {
        Some(s)
    } else {
        None
    }
}

/// An injective-candidate periodic curve with precomputed window data.
#[derive(Clone, Debug)]
pub struct PeriodicCurve {
    curve: PolyCurve,
    delta: PlanePoint,
    dd: Q,
    proj_lo: Q,
    proj_hi: Q,
    side_a_parity: Option<bool>,
}

impl PeriodicCurve {
    pub fn new(curve: PolyCurve) -> Result<Self> {
        let delta = curve.shift();
        if delta.is_zero() {
            return Err(Error::Precondition("period shift is zero".into()));
        }
        let projs: Vec<Q> = curve.points.iter().map(|p| p.dot(delta)).collect();
        let proj_lo = *projs.iter().min().unwrap();
        let proj_hi = *projs.iter().max().unwrap();
        let mut pc = PeriodicCurve { curve, delta, dd: delta.dot(delta), proj_lo, proj_hi, side_a_parity: None };
        pc.side_a_parity = pc.label_side_a();
        Ok(pc)
    }

    pub fn curve(&self) -> &PolyCurve {
        &self.curve
    }

    /// Segments of f^∞ whose projection on delta meets [lo, hi].
    fn segments_in_proj(&self, lo: Q, hi: Q) -> Vec<(i64, PlanePoint, PlanePoint)> {
        let kmin = ((lo - self.proj_hi) / self.dd).floor().to_integer() - 1;
        let kmax = ((hi - self.proj_lo) / self.dd).ceil().to_integer() + 1;
        let tau = self.curve.tau();
        let mut out = Vec::new();
        for k in kmin..=kmax {
            for r in 0..tau {
                let g = k * tau + r;
                let (a, b) = self.curve.segment(g);
                out.push((g, a, b));
            }
        }
        out
    }

    fn segments_along(&self, a: PlanePoint, b: PlanePoint) -> Vec<(i64, PlanePoint, PlanePoint)> {
        let (pa, pb) = (a.dot(self.delta), b.dot(self.delta));
        self.segments_in_proj(pa.min(pb), pa.max(pb))
    }

    pub fn on_curve(&self, p: PlanePoint) -> bool {
        self.segments_along(p, p).iter().any(|&(_, a, b)| point_on_segment(a, b, p).is_some())
    }

    /// Parity of crossings of the ray from p along rot90_left(delta), with
    /// the ray nudged infinitesimally toward +delta.
    fn parity(&self, p: PlanePoint) -> bool {
        let n = self.delta.rot90_left();
        let mut odd = false;
        for (_, a, b) in self.segments_along(p, p) {
            let (ba, bb) = ((a - p).dot(self.delta), (b - p).dot(self.delta));
            let (up_a, up_b) = (ba > qi(0), bb > qi(0));
            if up_a == up_b {
                continue;
            }
            let (aa, ab) = ((a - p).dot(n), (b - p).dot(n));
            let at = aa + (ab - aa) * (-ba) / (bb - ba);
            if at > qi(0) {
                odd = !odd;
            }
        }
        odd
    }

    fn label_side_a(&self) -> Option<bool> {
        let (a, b) = self.curve.segment(0);
        let mid = a + (b - a).scale(Q::new(1, 2));
        let normal = (b - a).rot90_left();
        let mut delta = Q::new(1, 2);
        for _ in 0..30 {
            let probe = mid + normal.scale(delta);
            let clear = self
                .segments_along(mid, probe)
                .iter()
                .filter(|&&(g, _, _)| g != 0)
                .all(|&(_, c, d)| intersect_segments(mid, probe, c, d) == Hit::None);
            if clear {
                return Some(self.parity(probe));
            }
            delta /= qi(2);
        }
        None
    }

    pub fn side(&self, p: PlanePoint) -> Result<Side> {
        if self.on_curve(p) {
            return Ok(Side::OnCurve);
        }
        let label = self.side_a_parity.ok_or_else(|| Error::Internal("side labeling failed".into()))?;
        Ok(if self.parity(p) == label { Side::SideA } else { Side::SideB })
    }
}

pub fn side_of(p: &LatticePolyline, pt: PlanePoint) -> Result<Side> {
    if !check_injective(p) {
        return Err(Error::Precondition("periodic extension is not injective".into()));
    }
    PeriodicCurve::new(p.to_curve())?.side(pt)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    Simple,
    OverlapSameOrientation,
    OverlapOppositeOrientation,
}

/// Evidence that (u, v) is a crossing pair: g runs along the curve on
/// [s, v] and the sides just before s and just after v differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub u: Q,
    pub v: Q,
    pub s: Q,
    pub kind: CrossingKind,
    pub side_before: Side,
    pub side_after: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Contact {
    Point { tg: Q, tf: Q },
    Overlap { tg0: Q, tg1: Q, tf0: Q, tf1: Q },
}

/// g = f + q - f(0) on [0, tau] against f^∞.
struct TranslatedCurve<'a> {
    pc: &'a PeriodicCurve,
    offset: PlanePoint,
}

impl<'a> TranslatedCurve<'a> {
    fn new(pc: &'a PeriodicCurve, q: PlanePoint) -> Self {
        TranslatedCurve { pc, offset: q - pc.curve.points[0] }
    }

    fn g(&self, t: Q) -> PlanePoint {
        self.pc.curve.eval(t) + self.offset
    }

    fn g_segment(&self, j: i64) -> (PlanePoint, PlanePoint) {
        let (a, b) = self.pc.curve.segment(j);
        (a + self.offset, b + self.offset)
    }

    fn contacts(&self, j: i64) -> Vec<Contact> {
        let (a, b) = self.g_segment(j);
        let mut out = Vec::new();
        for (k, c, d) in self.pc.segments_along(a, b) {
            match intersect_segments(a, b, c, d) {
                Hit::None => {}
                Hit::Point { s, t } => out.push(Contact::Point { tg: qi(j) + s, tf: qi(k) + t }),
                Hit::Overlap { s0, s1, t0, t1 } => out.push(Contact::Overlap {
                    tg0: qi(j) + s0,
                    tg1: qi(j) + s1,
                    tf0: qi(k) + t0,
                    tf1: qi(k) + t1,
                }),
            }
        }
        out
    }

    fn segment_before(t: Q) -> i64 {
        if t.is_integer() {
            t.to_integer() - 1
        } else {
            t.floor().to_integer()
        }
    }

    fn certify(&self, u: Q, v: Q) -> Option<Certificate> {
        let tau = self.pc.curve.tau();
        if v <= qi(0) || v >= qi(tau) || self.pc.curve.periodic_eval(u) != self.g(v) {
            return None;
        }
        // Just after v.
        let j = v.floor().to_integer();
        let contacts = self.contacts(j);
        let mut next = qi(j + 1);
        for c in &contacts {
            match *c {
                Contact::Overlap { tg0, tg1, .. } if tg0 <= v && v < tg1 => return None,
                Contact::Overlap { tg0, .. } if tg0 > v => next = next.min(tg0),
                Contact::Point { tg, .. } if tg > v => next = next.min(tg),
                _ => {}
            }
        }
        let side_after = self.pc.side(self.g((v + next) / qi(2))).ok()?;
        // Walk back along the overlap ending at v.
        let mut s = v;
        loop {
            let j = Self::segment_before(s);
            if j < 0 {
                return None;
            }
            let spans: Vec<(Q, Q)> = self
                .contacts(j)
                .into_iter()
                .filter_map(|c| match c {
                    Contact::Overlap { tg0, tg1, .. } => Some((tg0.max(qi(j)), tg1.min(s))),
                    _ => None,
                })
                .filter(|(a, b)| a < b)
                .collect();
            let mut cur = s;
            loop {
                let before = cur;
                for &(a, b) in &spans {
                    if a < cur && cur <= b {
                        cur = cur.min(a);
                    }
                }
                if cur == before {
                    break;
                }
            }
            if cur == s {
                break;
            }
            s = cur;
            if s == qi(0) {
                return None;
            }
            if s != qi(j) {
                break;
            }
        }
        let j = Self::segment_before(s);
        let mut prev = qi(j);
        for c in self.contacts(j) {
            match c {
                Contact::Point { tg, .. } if tg < s => prev = prev.max(tg),
                Contact::Overlap { tg1, .. } if tg1 < s => prev = prev.max(tg1),
                _ => {}
            }
        }
        let side_before = self.pc.side(self.g((prev + s) / qi(2))).ok()?;
        if side_before == Side::OnCurve || side_after == Side::OnCurve || side_before == side_after {
            return None;
        }
        let kind = if s == v {
            CrossingKind::Simple
        } else {
            let (ga, gb) = self.g_segment(Self::segment_before(v));
            let g_in = gb - ga;
            let (fa, fb) = self.pc.curve.segment(Self::segment_before(u).rem_euclid(i64::MAX));
            let f_in = fb - fa;
            if f_in.cross(g_in).is_zero() && f_in.dot(g_in) > qi(0) {
                CrossingKind::OverlapSameOrientation
            } else {
                CrossingKind::OverlapOppositeOrientation
            }
        };
        Some(Certificate { u, v, s, kind, side_before, side_after })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingPair {
    pub u: i64,
    pub v: i64,
    pub kind: CrossingKind,
    pub overlap_length: i64,
    pub certificate: Certificate,
}

fn check_q_on_open_segment(p: &LatticePolyline, q: LatticePoint) -> Result<()> {
    let d0 = p.points()[0];
    let delta = p.period_shift();
    let rel = q - d0;
    let cross = rel.x * delta.y - rel.y * delta.x;
    let dot = rel.x * delta.x + rel.y * delta.y;
    let dd = delta.x * delta.x + delta.y * delta.y;
    if cross != 0 || dot <= 0 || dot >= dd {
        return Err(Error::Precondition(format!(
            "q = {q} is not strictly between {d0} and {}",
            d0 + delta
        )));
    }
    Ok(())
}

/// All integer pairs (u, v) with v < u < v + l and d^∞(u) = d(v) + q,
/// sorted by (v, u).
pub fn intersecting_pairs(p: &LatticePolyline, q: LatticePoint) -> Result<Vec<(i64, i64)>> {
    check_q_on_open_segment(p, q)?;
    let l = p.period_length();
    let mut out = Vec::new();
    for v in 0..=l {
        let target = p.eval_int(v) + q - p.points()[0];
        for u in v + 1..v + l {
            if p.eval_int(u) == target {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

/// The intersecting pair (u, v) minimizing (v, u).
pub fn find_intersecting_pair(p: &LatticePolyline, q: LatticePoint) -> Result<Option<(i64, i64)>> {
    Ok(intersecting_pairs(p, q)?.into_iter().next())
}

pub fn find_crossing_pair(p: &LatticePolyline, q: LatticePoint) -> Result<CrossingPair> {
    if !check_injective(p) {
        return Err(Error::Precondition("periodic extension is not injective".into()));
    }
    check_q_on_open_segment(p, q)?;
    let curve = p.to_curve();
    let qp = q.to_plane();
    if (0..p.period_length()).any(|j| {
        let (a, b) = curve.segment(j);
        point_on_segment(a, b, qp).is_some()
    }) {
        return Err(Error::Precondition(format!("q = {q} lies on the curve")));
    }
    let pc = PeriodicCurve::new(curve)?;
    let tr = TranslatedCurve::new(&pc, qp);
    let l = p.period_length();
    for (u, v) in intersecting_pairs(p, q)? {
        if v <= 0 || v >= l {
            continue;
        }
        if let Some(cert) = tr.certify(qi(u), qi(v)) {
            let overlap = cert.v - cert.s;
            if !overlap.is_integer() {
                return Err(Error::Internal("lattice overlap of fractional length".into()));
            }
            return Ok(CrossingPair {
                u,
                v,
                kind: cert.kind,
                overlap_length: overlap.to_integer(),
                certificate: cert,
            });
        }
    }
    Err(Error::NoCrossingPair(format!("no certified crossing for q = {q}")))
}

/// Checks (u, v) against the crossing-pair definition.
pub fn certify_crossing(p: &LatticePolyline, q: LatticePoint, u: i64, v: i64) -> Result<Option<Certificate>> {
    let pc = PeriodicCurve::new(p.to_curve())?;
    Ok(TranslatedCurve::new(&pc, q.to_plane()).certify(qi(u), qi(v)))
}

/// The index relations along an overlap: d^∞(u - j) = d(v - j) + q in the
/// same-orientation case and d^∞(u + j) = d(v - j) + q otherwise, j <= i.
pub fn overlap_relations_hold(p: &LatticePolyline, q: LatticePoint, pair: &CrossingPair) -> bool {
    let rel = q - p.points()[0];
    (0..=pair.overlap_length).all(|j| {
        let g = p.eval_int(pair.v - j) + rel;
        match pair.kind {
            CrossingKind::Simple => j == 0 && p.eval_int(pair.u) == g,
            CrossingKind::OverlapSameOrientation => p.eval_int(pair.u - j) == g,
            CrossingKind::OverlapOppositeOrientation => p.eval_int(pair.u + j) == g,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pts: &[(i64, i64)]) -> Vec<LatticePoint> {
        pts.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
    }

    fn ybyb18() -> LatticePolyline {
        imbalance_curve(&CycleOrPath::parse_cycle("YBYBYRYRYBRBYRBRBR").unwrap()).unwrap()
    }

    #[test]
    fn table_round_trip() {
        for m in MOVES {
            let (a, b) = pair_for_move(m).unwrap();
            assert_eq!(move_for_pair(a, b), Some(m));
        }
        assert_eq!(move_for_pair(Color::Red, Color::Red), None);
    }

    #[test]
    fn curves_of_small_cycles() {
        let c = imbalance_curve(&CycleOrPath::parse_cycle("RBRB").unwrap()).unwrap();
        assert_eq!(c.points(), lp(&[(0, 0), (-1, 1), (-2, 2)]).as_slice());
        let err = imbalance_curve(&CycleOrPath::parse_cycle("RRBB").unwrap());
        assert!(matches!(err, Err(Error::ImproperColoring(_))));
    }

    #[test]
    fn eighteen_edge_curve_points() {
        let c = ybyb18();
        let expect = lp(&[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 3), (1, 4), (2, 4), (3, 3), (4, 2)]);
        assert_eq!(c.points(), expect.as_slice());
        assert_eq!(c.period_length(), 9);
        assert_eq!(c.period_shift(), LatticePoint::new(4, 2));
        assert_eq!(periodic_eval(&c, qi(11)), PlanePoint::ints(4, 4));
        assert_eq!(periodic_eval(&c, qi(-9)), PlanePoint::ints(-4, -2));
        assert_eq!(periodic_eval(&c, Q::new(1, 2)), PlanePoint::new(qi(0), Q::new(1, 2)));
    }

    #[test]
    fn injectivity_examples() {
        let rbbr = LatticePolyline::from_moves(&lp(&[(-1, 1), (1, -1)])).unwrap();
        assert!(!check_injective(&rbbr));
        assert!(check_injective(&ybyb18()));
        let yryr = LatticePolyline::from_moves(&lp(&[(1, 0), (1, 0)])).unwrap();
        assert!(check_injective(&yryr));
        assert!(yryr.to_curve().is_injective());
        assert!(ybyb18().to_curve().is_injective());
        let back = LatticePolyline::from_moves(&lp(&[(1, 0), (-1, 0), (1, 0)])).unwrap();
        assert!(!check_injective(&back));
        assert!(!back.to_curve().is_injective());
    }

    #[test]
    fn sides_of_a_line() {
        let yryr = LatticePolyline::from_moves(&lp(&[(1, 0), (1, 0)])).unwrap();
        let up = side_of(&yryr, PlanePoint::ints(0, 1)).unwrap();
        let down = side_of(&yryr, PlanePoint::ints(0, -1)).unwrap();
        assert_ne!(up, down);
        assert_eq!(up, Side::SideA);
        assert_eq!(side_of(&yryr, PlanePoint::new(Q::new(1, 2), qi(0))).unwrap(), Side::OnCurve);
        assert_eq!(side_of(&yryr, PlanePoint::ints(-7, 0)).unwrap(), Side::OnCurve);
    }

    #[test]
    fn eighteen_edge_sides_and_pairs() {
        let c = ybyb18();
        let q = LatticePoint::new(2, 1);
        assert_ne!(side_of(&c, q.to_plane()).unwrap(), Side::OnCurve);
        assert_eq!(side_of(&c, periodic_eval(&c, Q::new(1, 2))).unwrap(), Side::OnCurve);
        assert_eq!(find_intersecting_pair(&c, q).unwrap(), Some((4, 1)));
        let all = intersecting_pairs(&c, q).unwrap();
        assert!(all.contains(&(5, 2)));
        assert!(all.contains(&(8, 3)));
        let cp = find_crossing_pair(&c, q).unwrap();
        assert!(cp.v < cp.u && cp.u < cp.v + 9);
        assert!(overlap_relations_hold(&c, q, &cp));
    }

    #[test]
    fn off_segment_q_is_rejected() {
        let c = imbalance_curve(&CycleOrPath::parse_cycle("YRYRYB").unwrap()).unwrap();
        assert!(matches!(find_intersecting_pair(&c, LatticePoint::new(1, 0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn general_rational_curve() {
        let f = PolyCurve::new(vec![PlanePoint::ints(1, 1), PlanePoint::ints(2, 3), PlanePoint::ints(5, 3)]).unwrap();
        let cert = f.find_crossing_pair(PlanePoint::ints(3, 2)).unwrap();
        assert_eq!(cert.u, Q::new(3, 2));
        assert_eq!(cert.v, Q::new(1, 2));
        assert_eq!(cert.kind, CrossingKind::Simple);
        assert_eq!(f.periodic_eval(cert.u), PlanePoint::new(Q::new(7, 2), qi(3)));
    }

    #[test]
    fn overlap_same_orientation() {
        // up, up, right, right, up, right, down-right
        let c = imbalance_curve(&CycleOrPath::parse_cycle("YBYBYRYRYBYRBR").unwrap()).unwrap();
        assert_eq!(c.period_shift(), LatticePoint::new(4, 2));
        assert!(check_injective(&c));
        let q = LatticePoint::new(2, 1);
        let cert = certify_crossing(&c, q, 6, 3).unwrap().unwrap();
        assert_eq!(cert.kind, CrossingKind::OverlapSameOrientation);
        assert_eq!(cert.v - cert.s, qi(2));
        let cp = find_crossing_pair(&c, q).unwrap();
        assert!(overlap_relations_hold(&c, q, &cp));
    }
}
