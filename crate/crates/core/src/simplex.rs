//! Dense two-phase tableau simplex over exact rationals with Bland's rule.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

/// A row `sum coeffs[j] * x_j (sense) rhs` with non-negative rhs.
#[derive(Clone, Debug)]
pub struct DenseRow {
    pub coeffs: Vec<i64>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, objective: BigRational },
    Infeasible,
    Unbounded,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Reduced profits, last entry is minus the objective value.
    obj: Vec<BigRational>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, pv) in prow.iter().enumerate() {
                if !pv.is_zero() {
                    row[j] -= &f * pv;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (j, pv) in prow.iter().enumerate() {
                if !pv.is_zero() {
                    self.obj[j] -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule until optimal. Columns at or beyond `col_limit`
    /// never enter. Returns false when unbounded.
    fn run(&mut self, col_limit: usize) -> bool {
        let rhs = self.width;
        loop {
            let Some(c) = (0..col_limit).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `objective · x` subject to the rows and `x >= 0`.
pub fn maximize(n_vars: usize, rows: &[DenseRow], objective: &[i64]) -> Result<LpOutcome> {
    for r in rows {
        if r.coeffs.len() != n_vars || r.rhs < 0 {
            return Err(Error::Internal("malformed LP row".into()));
        }
    }
    let n_le = rows.iter().filter(|r| r.sense == Sense::Le).count();
    let n_eq = rows.len() - n_le;
    // Columns: structural, slacks, artificials, then rhs.
    let width = n_vars + n_le + n_eq;
    let mut tab_rows = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut slack, mut art) = (n_vars, n_vars + n_le);
    for r in rows {
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, &a) in r.coeffs.iter().enumerate() {
            if a != 0 {
                row[j] = q(a);
            }
        }
        row[width] = q(r.rhs);
        match r.sense {
            Sense::Le => {
                row[slack] = BigRational::one();
                basis.push(slack);
                slack += 1;
            }
            Sense::Eq => {
                row[art] = BigRational::one();
                basis.push(art);
                art += 1;
            }
        }
        tab_rows.push(row);
    }
    let art_start = n_vars + n_le;

    // Phase 1: maximize minus the sum of artificials.
    let mut obj = vec![BigRational::zero(); width + 1];
    for (i, row) in tab_rows.iter().enumerate() {
        if basis[i] >= art_start {
            for j in 0..=width {
                if j < art_start || j == width {
                    obj[j] += &row[j];
                }
            }
        }
    }
    let mut t = Tableau { rows: tab_rows, basis, obj, width };
    if n_eq > 0 {
        if !t.run(art_start) {
            return Err(Error::Internal("phase one unbounded".into()));
        }
        if !t.obj[width].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-valued artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    // Phase 2.
    let mut obj = vec![BigRational::zero(); width + 1];
    for (j, &c) in objective.iter().enumerate() {
        obj[j] = q(c);
    }
    for (i, row) in t.rows.iter().enumerate() {
        let b = t.basis[i];
        let cb = if b < n_vars { objective[b] } else { 0 };
        if cb != 0 {
            let cbq = q(cb);
            for j in 0..=width {
                if !row[j].is_zero() {
                    obj[j] -= &cbq * &row[j];
                }
            }
        }
    }
    t.obj = obj;
    if !t.run(art_start) {
        return Ok(LpOutcome::Unbounded);
    }
    let mut x = vec![BigRational::zero(); n_vars];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n_vars {
            x[b] = t.rows[i][width].clone();
        }
    }
    let objective_value = x
        .iter()
        .zip(objective)
        .fold(BigRational::zero(), |acc, (xi, &c)| acc + xi * q(c));
    Ok(LpOutcome::Optimal { x, objective: objective_value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &[i64], sense: Sense, rhs: i64) -> DenseRow {
        DenseRow { coeffs: c.to_vec(), sense, rhs }
    }

    #[test]
    fn small_lp() {
        // max x + y, x + 2y <= 4, 3x + y <= 6
        let out = maximize(2, &[row(&[1, 2], Sense::Le, 4), row(&[3, 1], Sense::Le, 6)], &[1, 1]).unwrap();
        match out {
            LpOutcome::Optimal { x, objective } => {
                assert_eq!(x, vec![BigRational::new(8.into(), 5.into()), BigRational::new(6.into(), 5.into())]);
                assert_eq!(objective, BigRational::new(14.into(), 5.into()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_equalities() {
        let out = maximize(1, &[row(&[1], Sense::Le, 1), row(&[1], Sense::Eq, 2)], &[1]).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_equalities() {
        let rows = [row(&[1, 1], Sense::Eq, 1), row(&[2, 2], Sense::Eq, 2), row(&[1, 0], Sense::Le, 1)];
        match maximize(2, &rows, &[1, 0]).unwrap() {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, q(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_detected() {
        let out = maximize(2, &[row(&[1, -1], Sense::Le, 1)], &[1, 1]).unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }
}
