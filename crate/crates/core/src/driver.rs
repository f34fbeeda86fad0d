//! End-to-end solver: exact LP, minimal face, then a combination step chosen
//! by the shape of the face's color projection.

use crate::cycle::{solve_fractional, Q};
use crate::error::{Error, Result};
use crate::face::{minimal_face, FaceClass, FaceDescriptor};
use crate::graph::{color_profile, symdiff_components, Color, ColorProfile, ColoredGraph, CycleOrPath, EdgeId, Matching};
use crate::lp::{build_lp, solve_lp, RationalSolution};
use crate::oracle::OracleCap;
use crate::union::combine_two_matchings_traced;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Which size, red and blue conditions of the guarantee hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuaranteeCheck {
    pub size_ok: bool,
    pub red_exact: bool,
    pub blue_ok: bool,
}

impl GuaranteeCheck {
    pub fn all(&self) -> bool {
        self.size_ok && self.red_exact && self.blue_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub matching: Matching,
    pub profile: ColorProfile,
    pub alpha_star: BigRational,
    pub face: FaceDescriptor,
    pub face_class: FaceClass,
    /// Dimension of the color projection of the face (0, 1 or 2).
    pub projected_dim: usize,
    pub guarantee_ok: GuaranteeCheck,
    pub trace: Vec<String>,
}

impl SolveReport {
    pub fn alpha_floor(&self) -> i64 {
        floor(&self.alpha_star)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solved(Box<SolveReport>),
    Infeasible,
}

fn floor(q: &BigRational) -> i64 {
    q.numer().div_floor(q.denom()).to_i64().expect("LP value fits in i64")
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_q(x: &BigRational) -> Result<Q> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Q::new(n, d)),
        _ => Err(Error::Internal(format!("cut value {x} does not fit in 64 bits"))),
    }
}

/// Whether k lies on the closed segment between integer points a and b.
fn on_projected_segment(a: (i64, i64), b: (i64, i64), k: (i64, i64)) -> bool {
    let d = (b.0 - a.0, b.1 - a.1);
    let r = (k.0 - a.0, k.1 - a.1);
    if r.0 * d.1 - r.1 * d.0 != 0 {
        return false;
    }
    let dot = r.0 * d.0 + r.1 * d.1;
    dot >= 0 && dot <= d.0 * d.0 + d.1 * d.1
}

fn projected_dim(pts: &[(i64, i64)]) -> usize {
    let o = pts[0];
    let diffs: Vec<(i64, i64)> = pts.iter().map(|p| (p.0 - o.0, p.1 - o.1)).filter(|d| *d != (0, 0)).collect();
    if diffs.is_empty() {
        0
    } else if diffs.iter().all(|d| d.0 * diffs[0].1 - d.1 * diffs[0].0 == 0) {
        1
    } else {
        2
    }
}

/// The single alternating component between two adjacent face vertices,
/// numbered so that the larger matching sits on even positions.
struct PairShape {
    shape: CycleOrPath,
    edge_ids: Vec<EdgeId>,
    shared: Matching,
    shared_point: (i64, i64),
}

fn pair_shape(g: &ColoredGraph, a: &Matching, b: &Matching) -> Result<PairShape> {
    let (m0, m1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let shared = m0.intersection(m1);
    let shared_point = color_profile(g, &shared)?.point();
    let comps = symdiff_components(g, m0, m1)?;
    if comps.len() != 1 {
        return Err(Error::Internal(format!("adjacent face vertices differ in {} components", comps.len())));
    }
    let c = &comps[0];
    let n = c.edge_ids.len();
    let order: Vec<usize> = if c.shape.is_cycle() {
        let s = (0..n).find(|&p| c.in_first[p]).unwrap_or(0);
        (0..n).map(|j| (s + j) % n).collect()
    } else if c.in_first[0] {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };
    let colors: Vec<Color> = order.iter().map(|&p| c.shape.colors[p]).collect();
    let shape = if c.shape.is_cycle() { CycleOrPath::even_cycle(colors)? } else { CycleOrPath::path(colors)? };
    Ok(PairShape { shape, edge_ids: order.iter().map(|&p| c.edge_ids[p]).collect(), shared, shared_point })
}

impl PairShape {
    fn lift(&self, m: &Matching) -> Matching {
        self.shared.union(&Matching::new(m.iter().map(|p| self.edge_ids[p])))
    }
}

fn fractional_on_edge(g: &ColoredGraph, a: &Matching, b: &Matching, k_red: i64, k_blue: Q) -> Result<Matching> {
    let ps = pair_shape(g, a, b)?;
    let kb = k_blue - Q::from_integer(ps.shared_point.1);
    let m = solve_fractional(&ps.shape, k_red - ps.shared_point.0, kb)?;
    Ok(ps.lift(&m))
}

pub fn solve(g: &ColoredGraph, k_red: i64, k_blue: i64) -> Result<SolveOutcome> {
    solve_with_cap(g, k_red, k_blue, OracleCap::default())
}

pub fn solve_with_cap(g: &ColoredGraph, k_red: i64, k_blue: i64, cap: OracleCap) -> Result<SolveOutcome> {
    if k_red < 0 || k_blue < 0 {
        return Err(Error::Precondition("requirements must be non-negative".into()));
    }
    cap.check(g)?;
    let model = build_lp(g, k_red, k_blue, cap)?;
    let Some(x) = solve_lp(&model)? else { return Ok(SolveOutcome::Infeasible) };
    let face = minimal_face(g, &model, &x)?;
    let mut trace = vec![format!("alpha* = {}", x.objective), format!("face: {}", face.classification)];
    let pts = face.projected_vertices.clone();
    let dim = projected_dim(&pts);
    let k = (k_red, k_blue);
    let vm = &face.vertex_matchings;
    let matching = match dim {
        0 => {
            trace.push("projection is a point: largest face vertex".into());
            let best = (0..vm.len()).max_by_key(|&i| (vm[i].len(), std::cmp::Reverse(i))).unwrap();
            vm[best].clone()
        }
        _ => {
            let host = face
                .edges()
                .into_iter()
                .find(|&(i, j)| on_projected_segment(pts[i], pts[j], k));
            match host {
                Some((i, j)) => {
                    trace.push(format!("requirement on face edge ({i}, {j})"));
                    let (m, t) = combine_two_matchings_traced(g, &vm[i], &vm[j], k_red, k_blue)?;
                    trace.extend(t);
                    let floor_alpha = floor(&x.objective);
                    trace.push(format!(
                        "segment case size {} vs floor(alpha*) - 1 = {}: {}",
                        m.len(),
                        floor_alpha - 1,
                        if m.len() as i64 >= floor_alpha - 1 { "attained" } else { "not attained" }
                    ));
                    m
                }
                None if dim == 2 => cut_interior(g, &face, k_red, k_blue, &mut trace)?,
                None => return Err(Error::Internal("requirement outside the projected face".into())),
            }
        }
    };
    finish(g, k_red, k_blue, x, face, dim, matching, trace)
}

/// Two-dimensional projection with k in its interior: cut by x_R = kR, solve
/// on the two boundary edges hit, then combine.
fn cut_interior(g: &ColoredGraph, face: &FaceDescriptor, k_red: i64, k_blue: i64, trace: &mut Vec<String>) -> Result<Matching> {
    let pts = &face.projected_vertices;
    let mut hits: Vec<(BigRational, (usize, usize))> = Vec::new();
    for (i, j) in face.edges() {
        let (a, b) = (pts[i], pts[j]);
        if a.0 == b.0 || k_red < a.0.min(b.0) || k_red > a.0.max(b.0) {
            continue;
        }
        let t = BigRational::new(BigInt::from(k_red - a.0), BigInt::from(b.0 - a.0));
        let y = big(a.1) + t * big(b.1 - a.1);
        hits.push((y, (i, j)));
    }
    let lo = hits.iter().min_by(|a, b| a.0.cmp(&b.0)).cloned();
    let hi = hits.iter().max_by(|a, b| a.0.cmp(&b.0)).cloned();
    let (Some((k1, e1)), Some((k2, e2))) = (lo, hi) else {
        return Err(Error::Internal("cut line misses the projected face".into()));
    };
    let kb = big(k_blue);
    if !(k1 < kb && kb < k2) {
        return Err(Error::Internal(format!("cut points {k1}, {k2} do not bracket {k_blue}")));
    }
    trace.push(format!("cut x_R = {k_red}: low {k1} on edge {e1:?}, high {k2} on edge {e2:?}"));
    let vm = &face.vertex_matchings;
    let m_low = fractional_on_edge(g, &vm[e1.0], &vm[e1.1], k_red, to_q(&k1)?)?;
    let m_high = fractional_on_edge(g, &vm[e2.0], &vm[e2.1], k_red, to_q(&k2)?)?;
    let pl = color_profile(g, &m_low)?.point();
    let ph = color_profile(g, &m_high)?.point();
    trace.push(format!("low matching {m_low} profile {pl:?}, high matching {m_high} profile {ph:?}"));
    let (m, t) = combine_two_matchings_traced(g, &m_low, &m_high, k_red, k_blue)?;
    trace.extend(t);
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &ColoredGraph,
    k_red: i64,
    k_blue: i64,
    x: RationalSolution,
    face: FaceDescriptor,
    projected_dim: usize,
    matching: Matching,
    trace: Vec<String>,
) -> Result<SolveOutcome> {
    let profile = color_profile(g, &matching)?;
    let (r, b) = profile.point();
    let check = GuaranteeCheck {
        size_ok: matching.len() as i64 >= floor(&x.objective) - 3,
        red_exact: r == k_red,
        blue_ok: b == k_blue || b == k_blue - 1,
    };
    if !check.all() || !crate::graph::validate_matching(g, matching.ids()) {
        return Err(Error::Internal(format!(
            "guarantee failed for {matching} ({check:?}); trace: {}",
            trace.join("; ")
        )));
    }
    Ok(SolveOutcome::Solved(Box::new(SolveReport {
        matching,
        profile,
        alpha_star: x.objective,
        face_class: face.classification,
        face,
        projected_dim,
        guarantee_ok: check,
        trace,
    })))
}

/// Re-checks a reported matching from scratch: distinct in-range edges,
/// no shared endpoint, exact red count, blue within one below, size bound.
pub fn verify(g: &ColoredGraph, k_red: i64, k_blue: i64, matching: &[EdgeId], alpha_star: &BigRational) -> bool {
    let mut seen_vertex = vec![false; g.vertex_count()];
    let mut seen_edge = vec![false; g.edge_count()];
    let (mut red, mut blue) = (0i64, 0i64);
    for &id in matching {
        if id >= g.edge_count() || seen_edge[id] {
            return false;
        }
        seen_edge[id] = true;
        let e = g.edges()[id];
        if seen_vertex[e.u] || seen_vertex[e.v] {
            return false;
        }
        seen_vertex[e.u] = true;
        seen_vertex[e.v] = true;
        match e.color {
            Color::Red => red += 1,
            Color::Blue => blue += 1,
            Color::Yellow => {}
        }
    }
    let bound = alpha_star.floor().to_integer() - BigInt::from(3);
    red == k_red && (blue == k_blue || blue == k_blue - 1) && BigInt::from(matching.len()) >= bound
}

pub fn verify_report(g: &ColoredGraph, k_red: i64, k_blue: i64, report: &SolveReport) -> bool {
    verify(g, k_red, k_blue, report.matching.ids(), &report.alpha_star)
}
