//! Dense exact simplex method for `max c.x  s.t.  A x = b, x >= 0`.
//!
//! Two phases with artificial variables and Bland's rule for both the
//! entering and the leaving variable, so the method terminates on degenerate
//! problems. The final tableau also yields dual multipliers, which callers use
//! to extract certificates.

use num_traits::{One, Signed, Zero};

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        x: Vec<Rat>,
        value: Rat,
        /// Multipliers `y` with `A^T y >= c` and `b . y = value`.
        duals: Vec<Rat>,
    },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    /// Reduced-cost row `z_j = c_B B^{-1} A_j - c_j`; last entry is the objective value.
    z: Vec<Rat>,
    basis: Vec<usize>,
    /// Number of structural (non-artificial) columns.
    n: usize,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        let support: Vec<usize> = (0..=self.rhs)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &support {
            self.rows[r][j] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rat>| {
            if row[col].is_zero() {
                return;
            }
            let f = row[col].clone();
            for &j in &support {
                let t = &pivot_row[j] * &f;
                row[j] -= t;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.z);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Bland-rule iterations. Returns `false` if the objective is unbounded.
    fn run(&mut self, stop_at_zero: bool) -> bool {
        loop {
            if stop_at_zero && self.z[self.rhs].is_zero() {
                return true;
            }
            let Some(col) = (0..self.n).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, col);
        }
    }
}

/// Solves `max c.x` subject to `A x = b`, `x >= 0` exactly.
pub fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert_eq!(b.len(), m);
    debug_assert!(a.iter().all(|r| r.len() == n));
    let rhs = n + m;
    let mut flipped = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        flipped[i] = neg;
        let mut row = vec![Rat::zero(); rhs + 1];
        for j in 0..n {
            row[j] = if neg { -&a[i][j] } else { a[i][j].clone() };
        }
        row[n + i] = Rat::one();
        row[rhs] = if neg { -&b[i] } else { b[i].clone() };
        rows.push(row);
    }
    // Phase 1: maximize -sum(artificials).
    let mut z = vec![Rat::zero(); rhs + 1];
    for row in &rows {
        for j in 0..n {
            z[j] -= &row[j];
        }
        z[rhs] -= &row[rhs];
    }
    let mut t = Tableau {
        rows,
        z,
        basis: (n..n + m).collect(),
        n,
        rhs,
    };
    t.run(true);
    if !t.z[rhs].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive basic artificials out; rows with no structural entry are redundant
    // and keep their artificial at zero forever.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            }
        }
    }
    // Phase 2 objective row.
    let cost = |j: usize| if j < n { c[j].clone() } else { Rat::zero() };
    let mut z = vec![Rat::zero(); rhs + 1];
    for j in 0..=rhs {
        let mut acc = Rat::zero();
        for (i, row) in t.rows.iter().enumerate() {
            let cb = cost(t.basis[i]);
            if !cb.is_zero() && !row[j].is_zero() {
                acc += cb * &row[j];
            }
        }
        if j < rhs {
            acc -= cost(j);
        }
        z[j] = acc;
    }
    t.z = z;
    if !t.run(false) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &v) in t.basis.iter().enumerate() {
        if v < n {
            x[v] = t.rows[i][rhs].clone();
        }
    }
    let duals = (0..m)
        .map(|k| {
            let v = t.z[n + k].clone();
            if flipped[k] {
                -v
            } else {
                v
            }
        })
        .collect();
    LpOutcome::Optimal {
        x,
        value: t.z[rhs].clone(),
        duals,
    }
}

/// Some `x >= 0` with `A x = b`, if one exists.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![Rat::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn r(v: i64) -> Rat {
        Rat::from_integer(BigInt::from(v))
    }

    fn rows(m: &[&[i64]]) -> Vec<Vec<Rat>> {
        m.iter()
            .map(|row| row.iter().map(|&v| r(v)).collect())
            .collect()
    }

    #[test]
    fn small_optimum_with_duals() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
        let a = rows(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let b = vec![r(4), r(6)];
        let c = vec![r(1), r(1), r(0), r(0)];
        let LpOutcome::Optimal { x, value, duals } = maximize(&a, &b, &c) else {
            panic!("expected optimum");
        };
        assert_eq!(value, Rat::new(BigInt::from(14), BigInt::from(5)));
        assert_eq!(x[0], Rat::new(BigInt::from(8), BigInt::from(5)));
        assert_eq!(x[1], Rat::new(BigInt::from(6), BigInt::from(5)));
        let dual_obj: Rat = duals.iter().zip(&b).map(|(y, bi)| y * bi).sum();
        assert_eq!(dual_obj, value);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = rows(&[&[1, 1]]);
        assert_eq!(maximize(&a, &[r(-1)], &[r(0), r(0)]), LpOutcome::Infeasible);
        let a = rows(&[&[1, -1]]);
        assert_eq!(maximize(&a, &[r(0)], &[r(1), r(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = rows(&[&[1, 1, 0], &[2, 2, 0], &[0, 0, 1]]);
        let b = vec![r(2), r(4), r(1)];
        let x = feasible_point(&a, &b).unwrap();
        assert_eq!(&x[0] + &x[1], r(2));
        assert_eq!(x[2], r(1));
    }

    proptest! {
        #[test]
        fn feasible_points_satisfy_constraints(
            m in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 3),
            b in prop::collection::vec(-4i64..=4, 3),
        ) {
            let a: Vec<Vec<Rat>> = m.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect();
            let bb: Vec<Rat> = b.iter().map(|&v| r(v)).collect();
            let c: Vec<Rat> = vec![r(0); 5];
            match maximize(&a, &bb, &c) {
                LpOutcome::Optimal { x, .. } => {
                    for (row, bi) in a.iter().zip(&bb) {
                        let lhs: Rat = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                        prop_assert_eq!(&lhs, bi);
                    }
                    prop_assert!(x.iter().all(|v| !v.is_negative()));
                }
                LpOutcome::Infeasible => {
                    // Farkas check via the phase-1 style auxiliary: no certificate
                    // is exposed, so probe with a bounded brute force over small integers.
                    for x0 in 0..=4i64 { for x1 in 0..=4i64 { for x2 in 0..=4i64 { for x3 in 0..=4i64 { for x4 in 0..=4i64 {
                        let x = [x0, x1, x2, x3, x4];
                        let ok = m.iter().zip(&b).all(|(row, bi)| row.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == *bi);
                        prop_assert!(!ok);
                    }}}}}
                }
                LpOutcome::Unbounded => prop_assert!(false, "zero objective cannot be unbounded"),
            }
        }
    }
}
