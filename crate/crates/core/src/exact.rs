//! Exact integer and rational linear algebra.
//!
//! Every geometric predicate in the crate bottoms out here. Integers are
//! arbitrary precision and rationals are always kept in lowest terms with a
//! positive denominator, so there is no rounding anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number; normalized on construction and after every operation.
pub type Rat = BigRational;

/// Integer coordinate vector.
pub type IntVector = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("simplex vertices are affinely dependent")]
    Degenerate,
    #[error("point is not in the affine hull of the simplex")]
    NotInAffineHull,
    #[error("empty input")]
    Empty,
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows, all of which must have the same length.
    pub fn from_rows(rows: Vec<IntVector>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ExactError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt, ExactError> {
    if m.rows != m.cols {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(bareiss_det(m.to_nested()))
}

/// Bareiss determinant of a square nested matrix; consumes the scratch copy.
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix given as rows, by fraction-free echelon reduction.
pub fn rank(rows: &[IntVector]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = &a[i][j] * &a[r][col] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_rank(points: &[IntVector]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<IntVector> = rest.iter().map(|p| sub(p, first)).collect();
    rank(&diffs)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides a vector by the gcd of its entries. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVector {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Generalized cross product: a vector orthogonal to the `n-1` rows of length `n`.
///
/// Entry `i` is the signed maximal minor obtained by deleting column `i`; it
/// is the zero vector exactly when the rows are linearly dependent.
pub fn orthogonal_complement(rows: &[IntVector]) -> IntVector {
    let n = rows.len() + 1;
    debug_assert!(rows.iter().all(|r| r.len() == n));
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != skip)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let m = bareiss_det(minor);
            if skip % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Signed normalized volume `det(v_1 - v_0, ..., v_d - v_0)` of a full-dimensional simplex.
pub fn simplex_det(vertices: &[&[BigInt]]) -> BigInt {
    let (v0, rest) = vertices.split_first().expect("simplex has vertices");
    bareiss_det(rest.iter().map(|v| sub(v, v0)).collect())
}

/// Barycentric coordinates of `x` with respect to a full-dimensional simplex,
/// returned as integer numerators over a shared positive denominator.
///
/// The denominator is `|det|` of the simplex's homogeneous vertex matrix, i.e.
/// its normalized volume.
pub fn barycentric_scaled(
    vertices: &[&[BigInt]],
    x: &[BigInt],
) -> Result<(Vec<BigInt>, BigInt), ExactError> {
    let n = vertices.len();
    let d = x.len();
    if n != d + 1 {
        return Err(ExactError::DimensionMismatch {
            expected: d + 1,
            found: n,
        });
    }
    // Column j of the homogeneous matrix is (v_j, 1).
    let build = |replace: Option<usize>| -> Vec<Vec<BigInt>> {
        (0..=d)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if Some(c) == replace {
                            if r < d {
                                x[r].clone()
                            } else {
                                BigInt::one()
                            }
                        } else if r < d {
                            vertices[c][r].clone()
                        } else {
                            BigInt::one()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let full = bareiss_det(build(None));
    if full.is_zero() {
        return Err(ExactError::Degenerate);
    }
    let negate = full.is_negative();
    let nums = (0..n)
        .map(|j| {
            let v = bareiss_det(build(Some(j)));
            if negate {
                -v
            } else {
                v
            }
        })
        .collect();
    Ok((nums, full.abs()))
}

/// Barycentric coordinates of `x` with respect to affinely independent points.
///
/// Works for simplices of any dimension `k <= d` embedded in `d`-space; when
/// `k < d` the point must lie in the simplex's affine hull.
pub fn barycentric(vertices: &[IntVector], x: &[BigInt]) -> Result<Vec<Rat>, ExactError> {
    if vertices.is_empty() {
        return Err(ExactError::Empty);
    }
    let d = x.len();
    if let Some(bad) = vertices.iter().find(|v| v.len() != d) {
        return Err(ExactError::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    if vertices.len() == d + 1 {
        let refs: Vec<&[BigInt]> = vertices.iter().map(Vec::as_slice).collect();
        let (nums, den) = barycentric_scaled(&refs, x)?;
        return Ok(nums.into_iter().map(|n| Rat::new(n, den.clone())).collect());
    }
    let k = vertices.len();
    // Augmented system [v_0 .. v_{k-1} | x ; 1 .. 1 | 1] with d+1 rows.
    let mut a: Vec<Vec<Rat>> = (0..=d)
        .map(|r| {
            let mut row: Vec<Rat> = vertices
                .iter()
                .map(|v| {
                    if r < d {
                        Rat::from_integer(v[r].clone())
                    } else {
                        Rat::one()
                    }
                })
                .collect();
            row.push(if r < d {
                Rat::from_integer(x[r].clone())
            } else {
                Rat::one()
            });
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..=d).find(|&i| !a[i][col].is_zero()) else {
            return Err(ExactError::Degenerate);
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..=d {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i][col..=k].iter_mut().zip(&pivot_row[col..=k]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return Err(ExactError::NotInAffineHull);
    }
    Ok(pivots.iter().map(|&row| a[row][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(m.iter().map(|r| v(r)).collect()).unwrap()
    }

    #[test]
    fn det_identity_and_diagonal() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        let m = IntMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        assert_eq!(det(&m).unwrap(), BigInt::from(8));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        assert_eq!(det(&m), Err(ExactError::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(det(&m).unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(det(&m).unwrap(), BigInt::from(0));
    }

    #[test]
    fn affine_rank_examples() {
        assert_eq!(affine_rank(&[v(&[3, 1, 4])]), 0);
        let simplex = [v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        assert_eq!(affine_rank(&simplex), 3);
        // Four points on the plane x + y + z = 2.
        let coplanar = [v(&[2, 0, 0]), v(&[0, 2, 0]), v(&[0, 0, 2]), v(&[1, 1, 0])];
        assert_eq!(affine_rank(&coplanar), 2);
    }

    #[test]
    fn barycentric_vertex_and_centroid() {
        let s = [v(&[0, 0]), v(&[3, 0]), v(&[0, 3])];
        let b = barycentric(&s, &v(&[0, 0])).unwrap();
        assert_eq!(b, vec![Rat::one(), Rat::zero(), Rat::zero()]);
        let third = Rat::new(BigInt::from(1), BigInt::from(3));
        let b = barycentric(&s, &v(&[1, 1])).unwrap();
        assert_eq!(b, vec![third.clone(), third.clone(), third]);
    }

    #[test]
    fn barycentric_degenerate() {
        let s = [v(&[0, 0]), v(&[1, 1]), v(&[2, 2])];
        assert_eq!(barycentric(&s, &v(&[1, 1])), Err(ExactError::Degenerate));
    }

    #[test]
    fn barycentric_lower_dimensional_simplex() {
        let edge = [v(&[0, 0, 0]), v(&[2, 2, 0])];
        let b = barycentric(&edge, &v(&[1, 1, 0])).unwrap();
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(b, vec![half.clone(), half]);
        assert_eq!(
            barycentric(&edge, &v(&[1, 0, 0])),
            Err(ExactError::NotInAffineHull)
        );
    }

    #[test]
    fn orthogonal_complement_is_orthogonal() {
        let rows = [v(&[1, 2, 3]), v(&[4, 5, 7])];
        let n = orthogonal_complement(&rows);
        assert!(dot(&n, &rows[0]).is_zero());
        assert!(dot(&n, &rows[1]).is_zero());
        assert!(!n.iter().all(Zero::is_zero));
    }

    fn matrix_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-9i64..=9, n), n)
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_expansion(m in matrix_strategy(4)) {
            prop_assert_eq!(det(&to_matrix(&m)).unwrap(), BigInt::from(cofactor_det(&m)));
        }

        #[test]
        fn det_row_swap_negates(m in matrix_strategy(4), a in 0usize..4, b in 0usize..4) {
            prop_assume!(a != b);
            let mut swapped = to_matrix(&m);
            swapped.swap_rows(a, b);
            prop_assert_eq!(det(&swapped).unwrap(), -det(&to_matrix(&m)).unwrap());
        }

        #[test]
        fn rank_bounded_and_consistent_with_det(m in matrix_strategy(3)) {
            let rows: Vec<IntVector> = m.iter().map(|r| v(r)).collect();
            let r = rank(&rows);
            prop_assert_eq!(r == 3, cofactor_det(&m) != 0);
        }

        #[test]
        fn barycentric_round_trip(
            pts in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 4),
            w in prop::collection::vec(0i64..=5, 4),
        ) {
            let verts: Vec<IntVector> = pts.iter().map(|p| v(p)).collect();
            let refs: Vec<&[BigInt]> = verts.iter().map(Vec::as_slice).collect();
            prop_assume!(!simplex_det(&refs).is_zero());
            prop_assume!(w.iter().sum::<i64>() > 0);
            // x = (sum w_i v_i) / sum w_i may be fractional; scale the simplex so it is not.
            let total: i64 = w.iter().sum();
            let scaled: Vec<IntVector> = verts
                .iter()
                .map(|p| p.iter().map(|c| c * total).collect())
                .collect();
            let x: IntVector = (0..3)
                .map(|k| (0..4).map(|i| BigInt::from(w[i]) * &verts[i][k]).sum())
                .collect();
            let lambda = barycentric(&scaled, &x).unwrap();
            let sum: Rat = lambda.iter().cloned().sum();
            prop_assert_eq!(sum, Rat::one());
            for k in 0..3 {
                let coord: Rat = lambda
                    .iter()
                    .zip(&scaled)
                    .map(|(l, p)| l * Rat::from_integer(p[k].clone()))
                    .sum();
                prop_assert_eq!(coord, Rat::from_integer(x[k].clone()));
            }
            for l in &lambda {
                prop_assert!(!l.is_negative());
                prop_assert!(l.numer().gcd(l.denom()).is_one() || l.is_zero());
                prop_assert!(l.denom().is_positive());
            }
        }

        #[test]
        fn rational_ops_stay_reduced(a in -50i64..50, b in 1i64..50, c in -50i64..50, e in 1i64..50) {
            let x = Rat::new(BigInt::from(a), BigInt::from(b));
            let y = Rat::new(BigInt::from(c), BigInt::from(e));
            for r in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(r.denom().is_positive());
                prop_assert!(r.numer().gcd(r.denom()).is_one());
            }
            if !y.is_zero() {
                let q = &x / &y;
                prop_assert!(q.denom().is_positive());
                prop_assert!(q.numer().gcd(q.denom()).is_one());
            }
        }
    }
}
