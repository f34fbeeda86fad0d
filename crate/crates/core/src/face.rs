//! Minimal face of the matching polytope containing a basic LP optimum.

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, EdgeId, Matching};
use crate::lp::{mask_iter, mask_of, project_matching, EdgeMask, LPModel, RationalSolution};
use crate::oracle::for_each_matching;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceClass {
    Singleton,
    Segment,
    Triangle,
    Parallelogram,
}

impl fmt::Display for FaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FaceClass::Singleton => "singleton",
            FaceClass::Segment => "segment",
            FaceClass::Triangle => "triangle",
            FaceClass::Parallelogram => "parallelogram",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    /// For a parallelogram the vertices are in cyclic order.
    pub vertex_matchings: Vec<Matching>,
    pub classification: FaceClass,
    pub projected_vertices: Vec<(i64, i64)>,
}

impl FaceDescriptor {
    /// Vertex index pairs that are edges of the face.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.classification {
            FaceClass::Singleton => vec![],
            FaceClass::Segment => vec![(0, 1)],
            FaceClass::Triangle => vec![(0, 1), (1, 2), (0, 2)],
            FaceClass::Parallelogram => vec![(0, 1), (1, 2), (2, 3), (0, 3)],
        }
    }
}

fn to_q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rank of a list of rational vectors.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pv = m[r][c].clone();
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pv;
                for j in c..cols {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Affine dimension of a point set.
pub fn affine_rank(points: &[Vec<BigRational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Unique solution of a consistent system `a · y = b` (a is m × k), if any.
fn solve_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &pv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for j in c..=k {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < k || m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = m[i][k].clone();
    }
    Some(y)
}

/// Convex coefficients expressing `x` over the given affinely independent
/// points, when they exist.
pub fn barycentric(points: &[Vec<BigRational>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let dim = x.len();
    let mut a: Vec<Vec<BigRational>> = (0..dim).map(|i| points.iter().map(|p| p[i].clone()).collect()).collect();
    a.push(vec![to_q(1); points.len()]);
    let mut b = x.to_vec();
    b.push(to_q(1));
    let y = solve_unique(&a, &b)?;
    if y.iter().any(|v| v.is_negative()) {
        None
    } else {
        Some(y)
    }
}

fn indicator(mask: EdgeMask, n: usize) -> Vec<BigRational> {
    (0..n).map(|e| to_q(((mask >> e) & 1) as i64)).collect()
}

/// Convex coefficients of `x` over the face vertices (one of possibly many
/// for a parallelogram).
pub fn convex_coefficients(face: &FaceDescriptor, x: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = x.len();
    let pts: Vec<Vec<BigRational>> =
        face.vertex_matchings.iter().map(|m| indicator(mask_of(m.iter()), n)).collect();
    if face.classification != FaceClass::Parallelogram {
        return barycentric(&pts, x);
    }
    for tri in [[0usize, 1, 2], [0, 2, 3]] {
        let sub: Vec<Vec<BigRational>> = tri.iter().map(|&i| pts[i].clone()).collect();
        if let Some(y) = barycentric(&sub, x) {
            let mut full = vec![BigRational::zero(); 4];
            for (k, &i) in tri.iter().enumerate() {
                full[i] = y[k].clone();
            }
            return Some(full);
        }
    }
    None
}

fn signed(mask: EdgeMask) -> Vec<i64> {
    (0..64).map(|e| ((mask >> e) & 1) as i64).collect()
}

/// Reorders four parallelogram vertices cyclically.
fn cyclic_order(masks: &[EdgeMask]) -> Option<Vec<usize>> {
    let v: Vec<Vec<i64>> = masks.iter().map(|&m| signed(m)).collect();
    let sum = |a: usize, b: usize| -> Vec<i64> { v[a].iter().zip(&v[b]).map(|(x, y)| x + y).collect() };
    for (a, c, b, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        if sum(a, c) == sum(b, d) {
            return Some(vec![a, b, c, d]);
        }
    }
    None
}

pub fn minimal_face(g: &ColoredGraph, model: &LPModel, x: &RationalSolution) -> Result<FaceDescriptor> {
    if x.values.len() != model.edge_count {
        return Err(Error::Precondition("solution length does not match the model".into()));
    }
    let support: Vec<EdgeId> = x.support();
    let tight: Vec<(EdgeMask, i64)> = model
        .rows
        .iter()
        .filter(|r| r.is_polytope_row() && r.value(&x.values) == to_q(r.rhs))
        .map(|r| (r.edges, r.rhs))
        .collect();
    let mut masks: Vec<EdgeMask> = Vec::new();
    let mut too_many = false;
    for_each_matching(g, &support, |ids| {
        if too_many {
            return;
        }
        let m = mask_of(ids.iter().copied());
        if tight.iter().all(|&(rm, rhs)| (rm & m).count_ones() as i64 == rhs) {
            masks.push(m);
            if masks.len() > 4 {
                too_many = true;
            }
        }
    });
    if too_many {
        return Err(Error::Internal("minimal face has more than four vertices".into()));
    }
    if masks.is_empty() {
        return Err(Error::Internal("minimal face has no vertices".into()));
    }
    let n = model.edge_count;
    let pts: Vec<Vec<BigRational>> = masks.iter().map(|&m| indicator(m, n)).collect();
    let dim = affine_rank(&pts);
    let classification = match (dim, masks.len()) {
        (0, 1) => FaceClass::Singleton,
        (1, 2) => FaceClass::Segment,
        (2, 3) => FaceClass::Triangle,
        (2, 4) => FaceClass::Parallelogram,
        (d, k) => {
            return Err(Error::Internal(format!("face of dimension {d} with {k} vertices")));
        }
    };
    if classification == FaceClass::Parallelogram {
        let order = cyclic_order(&masks)
            .ok_or_else(|| Error::Internal("four face vertices do not form a parallelogram".into()))?;
        masks = order.iter().map(|&i| masks[i]).collect();
    }
    let vertex_matchings: Vec<Matching> = masks.iter().map(|&m| Matching::new(mask_iter(m))).collect();
    let projected_vertices = vertex_matchings
        .iter()
        .map(|m| project_matching(g, m))
        .collect::<Result<Vec<_>>>()?;
    let face = FaceDescriptor { vertex_matchings, classification, projected_vertices };
    if convex_coefficients(&face, &x.values).is_none() {
        return Err(Error::Internal("optimum is not in the convex hull of the face vertices".into()));
    }
    Ok(face)
}
