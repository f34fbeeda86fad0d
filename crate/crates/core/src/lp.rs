/*!
The color-constrained matching LP.

Variables are indexed by edge id. Every row of the model has 0/1
coefficients, so rows are stored as edge bitmasks. Odd-set rows are all
enumerated; the solver activates them lazily and stops once the current
optimum satisfies every row of the model, which makes it a vertex of the
full polytope as well.
*/

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, EdgeId, Matching, VertexId};
use crate::oracle::OracleCap;
use crate::simplex::{maximize, DenseRow, LpOutcome, Sense};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type EdgeMask = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Degree(VertexId),
    /// Vertex set as a bitmask.
    Blossom(u64),
    RedTotal,
    BlueTotal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpRow {
    pub kind: RowKind,
    pub edges: EdgeMask,
    pub sense: Sense,
    pub rhs: i64,
}

impl LpRow {
    /// Rows that describe the matching polytope itself.
    pub fn is_polytope_row(&self) -> bool {
        matches!(self.kind, RowKind::Degree(_) | RowKind::Blossom(_))
    }

    pub fn value(&self, x: &[BigRational]) -> BigRational {
        mask_iter(self.edges).fold(BigRational::zero(), |acc, e| acc + &x[e])
    }

    pub fn value_of_matching(&self, m: EdgeMask) -> i64 {
        (self.edges & m).count_ones() as i64
    }
}

pub fn mask_iter(mut m: EdgeMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_of(ids: impl IntoIterator<Item = EdgeId>) -> EdgeMask {
    ids.into_iter().fold(0, |m, e| m | (1u64 << e))
}

#[derive(Clone, Debug)]
pub struct LPModel {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub k_red: i64,
    pub k_blue: i64,
    /// Degree rows, then odd-set rows, then the two equality rows.
    pub rows: Vec<LpRow>,
}

impl LPModel {
    pub fn degree_rows(&self) -> impl Iterator<Item = &LpRow> {
        self.rows.iter().filter(|r| matches!(r.kind, RowKind::Degree(_)))
    }

    pub fn blossom_rows(&self) -> impl Iterator<Item = &LpRow> {
        self.rows.iter().filter(|r| matches!(r.kind, RowKind::Blossom(_)))
    }

    pub fn equality_rows(&self) -> impl Iterator<Item = &LpRow> {
        self.rows.iter().filter(|r| r.sense == Sense::Eq)
    }

    /// Exact feasibility check of a point against every row.
    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        if x.len() != self.edge_count || x.iter().any(|v| v < &BigRational::zero()) {
            return false;
        }
        self.rows.iter().all(|r| {
            let v = r.value(x);
            let rhs = BigRational::from_integer(BigInt::from(r.rhs));
            match r.sense {
                Sense::Le => v <= rhs,
                Sense::Eq => v == rhs,
            }
        })
    }

    pub fn objective_value(&self, x: &[BigRational]) -> BigRational {
        x.iter().fold(BigRational::zero(), |a, v| a + v)
    }
}

pub fn build_lp(g: &ColoredGraph, k_red: i64, k_blue: i64, cap: OracleCap) -> Result<LPModel> {
    cap.check(g)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > 64 || n > 63 {
        return Err(Error::CapExceeded("LP rows use 64-bit masks".into()));
    }
    let mut rows = Vec::new();
    for v in 0..n {
        let edges = mask_of((0..m).filter(|&e| g.edges()[e].touches(v)));
        rows.push(LpRow { kind: RowKind::Degree(v), edges, sense: Sense::Le, rhs: 1 });
    }
    let endpoints: Vec<u64> = g.edges().iter().map(|e| (1u64 << e.u) | (1u64 << e.v)).collect();
    let mut sets: Vec<u64> = (0u64..(1u64 << n))
        .filter(|s| {
            let c = s.count_ones();
            c >= 3 && c % 2 == 1
        })
        .collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    for s in sets {
        let edges = mask_of((0..m).filter(|&e| endpoints[e] & s == endpoints[e]));
        let rhs = (s.count_ones() as i64 - 1) / 2;
        rows.push(LpRow { kind: RowKind::Blossom(s), edges, sense: Sense::Le, rhs });
    }
    let by_color = |c: Color| mask_of((0..m).filter(|&e| g.color(e) == c));
    rows.push(LpRow { kind: RowKind::RedTotal, edges: by_color(Color::Red), sense: Sense::Eq, rhs: k_red });
    rows.push(LpRow { kind: RowKind::BlueTotal, edges: by_color(Color::Blue), sense: Sense::Eq, rhs: k_blue });
    Ok(LPModel { vertex_count: n, edge_count: m, k_red, k_blue, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalSolution {
    pub values: Vec<BigRational>,
    pub objective: BigRational,
}

impl RationalSolution {
    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.values.len()).filter(|&e| !self.values[e].is_zero()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// The matching given by an integral solution.
    pub fn as_matching(&self) -> Option<Matching> {
        if self.is_integral() {
            Some(Matching::new(self.support()))
        } else {
            None
        }
    }
}

const CUTS_PER_ROUND: usize = 32;

/// Exact basic optimum, or `None` when infeasible.
pub fn solve_lp(model: &LPModel) -> Result<Option<RationalSolution>> {
    if model.k_red < 0 || model.k_blue < 0 {
        return Ok(None);
    }
    let n = model.edge_count;
    let mut active: Vec<usize> = (0..model.rows.len())
        .filter(|&i| !matches!(model.rows[i].kind, RowKind::Blossom(_)))
        .collect();
    // Odd-set rows that can never be violated are skipped during separation.
    let candidates: Vec<usize> = (0..model.rows.len())
        .filter(|&i| {
            let r = &model.rows[i];
            matches!(r.kind, RowKind::Blossom(_)) && r.edges.count_ones() as i64 > r.rhs
        })
        .collect();
    loop {
        let dense: Vec<DenseRow> = active
            .iter()
            .map(|&i| {
                let r = &model.rows[i];
                let mut coeffs = vec![0i64; n];
                for e in mask_iter(r.edges) {
                    coeffs[e] = 1;
                }
                DenseRow { coeffs, sense: r.sense, rhs: r.rhs }
            })
            .collect();
        let x = match maximize(n, &dense, &vec![1; n])? {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Internal("matching LP reported unbounded".into())),
            LpOutcome::Optimal { x, .. } => x,
        };
        let violated = violated_rows(model, &candidates, &x);
        if violated.is_empty() {
            let objective = model.objective_value(&x);
            return Ok(Some(RationalSolution { values: x, objective }));
        }
        active.extend(violated.into_iter().take(CUTS_PER_ROUND));
        active.sort_unstable();
    }
}

/// Violated rows ordered by decreasing violation, then by row index.
fn violated_rows(model: &LPModel, candidates: &[usize], x: &[BigRational]) -> Vec<usize> {
    let lcm = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let scaled: Option<Vec<i128>> = x
        .iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).to_i128())
        .collect();
    let mut out: Vec<(BigRational, usize)> = Vec::new();
    match (scaled, lcm.to_i128()) {
        (Some(sx), Some(l)) => {
            for &i in candidates {
                let r = &model.rows[i];
                let v: i128 = mask_iter(r.edges).map(|e| sx[e]).sum();
                let excess = v - l * r.rhs as i128;
                if excess > 0 {
                    out.push((BigRational::new(BigInt::from(excess), lcm.clone()), i));
                }
            }
        }
        _ => {
            for &i in candidates {
                let r = &model.rows[i];
                let excess = r.value(x) - BigRational::from_integer(BigInt::from(r.rhs));
                if excess > BigRational::zero() {
                    out.push((excess, i));
                }
            }
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    out.into_iter().map(|(_, i)| i).collect()
}

/// π(x) = (x(R), x(B)).
pub fn project_solution(g: &ColoredGraph, x: &RationalSolution) -> (BigRational, BigRational) {
    let mut r = BigRational::zero();
    let mut b = BigRational::zero();
    for (e, v) in x.values.iter().enumerate() {
        match g.color(e) {
            Color::Red => r += v,
            Color::Blue => b += v,
            Color::Yellow => {}
        }
    }
    (r, b)
}

/// π of a matching's characteristic vector.
pub fn project_matching(g: &ColoredGraph, m: &Matching) -> Result<(i64, i64)> {
    Ok(crate::graph::color_profile(g, m)?.point())
}
