//! Regularity of triangulations via exact height certificates.
//!
//! A triangulation on a point set is regular when some height function `w`
//! lifts it to a strictly convex surface: for every simplex `S` and every
//! point `v` outside it, `w(v)` lies strictly above the affine interpolation
//! of `w` on `S` at `v`. With barycentric coordinates `l` of `v` relative to
//! `S` this reads
//!
//! ```text
//! w(v) - sum_{u in S} l_u(v) w(u) > 0,
//! ```
//!
//! and by homogeneity the strict system is feasible iff the same system with
//! right-hand side `>= 1` is. Feasibility is decided by an exact simplex
//! solve of the Farkas alternative
//!
//! ```text
//! max 1.y  s.t.  A^T y = 0,  1.y <= 1,  y >= 0,
//! ```
//!
//! whose optimal dual multipliers are heights when the optimum is zero and
//! whose optimal `y` is an infeasibility certificate otherwise. Both outcomes
//! are re-checked before being returned.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::exact::{barycentric_scaled, Rat};
use crate::lp::{maximize, LpOutcome};
use crate::polytope::text::content_lines;
use crate::polytope::ParseError;
use crate::triangulation::Triangulation;

/// One rational height per configuration point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    pub heights: Vec<Rat>,
}

/// `sum coeff * w(point) >= 1` for one (simplex, outside point) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingConstraint {
    pub simplex: usize,
    pub point: usize,
    pub terms: Vec<(usize, Rat)>,
}

impl LiftingConstraint {
    pub fn evaluate(&self, h: &HeightFunction) -> Rat {
        self.terms.iter().map(|(i, c)| c * &h.heights[*i]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingSystem {
    pub points: usize,
    pub constraints: Vec<LiftingConstraint>,
}

impl LiftingSystem {
    /// One constraint for every simplex and every configuration point not among its vertices.
    pub fn new(t: &Triangulation) -> Self {
        let cfg = t.config();
        let constraints = t
            .simplices()
            .par_iter()
            .enumerate()
            .flat_map_iter(|(s, simplex)| {
                let verts: Vec<&[BigInt]> =
                    simplex.vertices().iter().map(|&i| cfg.coords(i)).collect();
                (0..cfg.len())
                    .filter(|v| !simplex.vertices().contains(v))
                    .map(|v| {
                        let (nums, den) = barycentric_scaled(&verts, cfg.coords(v))
                            .expect("triangulation simplices are full-dimensional");
                        let mut terms = vec![(v, Rat::one())];
                        for (&u, num) in simplex.vertices().iter().zip(nums) {
                            if !num.is_zero() {
                                terms.push((u, -Rat::new(num, den.clone())));
                            }
                        }
                        LiftingConstraint {
                            simplex: s,
                            point: v,
                            terms,
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        LiftingSystem {
            points: cfg.len(),
            constraints,
        }
    }
}

/// Nonnegative multipliers `y` on lifting constraints with `A^T y = 0` and
/// `sum y > 0`: no height function can satisfy all constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<(usize, Rat)>,
}

impl FarkasCertificate {
    pub fn verify(&self, system: &LiftingSystem) -> bool {
        if self.multipliers.iter().any(|(_, y)| y.is_negative()) {
            return false;
        }
        let total: Rat = self.multipliers.iter().map(|(_, y)| y.clone()).sum();
        if !total.is_positive() {
            return false;
        }
        let mut combo = vec![Rat::zero(); system.points];
        for (i, y) in &self.multipliers {
            for (p, c) in &system.constraints[*i].terms {
                combo[*p] += c * y;
            }
        }
        combo.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular(HeightFunction),
    NotRegular(FarkasCertificate),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular(_))
    }
}

/// Decides regularity of `t`, returning a verified certificate either way.
pub fn regularity_certificate(t: &Triangulation) -> Regularity {
    let system = LiftingSystem::new(t);
    let n = system.points;
    let m = system.constraints.len();
    // Columns: y_0..y_{m-1}, slack. Rows: one per point, then the normalization.
    let mut rows = vec![vec![Rat::zero(); m + 1]; n + 1];
    for (i, con) in system.constraints.iter().enumerate() {
        for (p, c) in &con.terms {
            rows[*p][i] = c.clone();
        }
        rows[n][i] = Rat::one();
    }
    rows[n][m] = Rat::one();
    let mut rhs = vec![Rat::zero(); n + 1];
    rhs[n] = Rat::one();
    let mut cost = vec![Rat::one(); m + 1];
    cost[m] = Rat::zero();

    let LpOutcome::Optimal { x, value, duals } = maximize(&rows, &rhs, &cost) else {
        unreachable!("the Farkas problem is feasible (y = 0) and bounded (1.y <= 1)");
    };
    if value.is_zero() {
        let h = HeightFunction {
            heights: duals[..n].to_vec(),
        };
        assert!(
            system
                .constraints
                .iter()
                .all(|c| c.evaluate(&h) >= Rat::one()),
            "dual multipliers do not certify regularity"
        );
        Regularity::Regular(h)
    } else {
        let cert = FarkasCertificate {
            multipliers: x[..m]
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
                .map(|(i, y)| (i, y.clone()))
                .collect(),
        };
        assert!(
            cert.verify(&system),
            "LP optimum is not a Farkas certificate"
        );
        Regularity::NotRegular(cert)
    }
}

/// True iff every lifting constraint holds strictly under `h`.
pub fn verify_heights(t: &Triangulation, h: &HeightFunction) -> bool {
    if h.heights.len() != t.config().len() {
        return false;
    }
    LiftingSystem::new(t)
        .constraints
        .iter()
        .all(|c| c.evaluate(h).is_positive())
}

pub fn format_heights(h: &HeightFunction) -> String {
    let mut out = String::new();
    for r in &h.heights {
        writeln!(out, "{}/{}", r.numer(), r.denom()).expect("writing to a String");
    }
    out
}

/// Parses one `p/q` (or plain integer) per line.
pub fn parse_heights(text: &str) -> Result<HeightFunction, ParseError> {
    let heights = content_lines(text)
        .map(|(no, l)| {
            let (num, den) = l.split_once('/').unwrap_or((l, "1"));
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| ParseError::new(no, format!("bad numerator in {l:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| ParseError::new(no, format!("bad denominator in {l:?}")))?;
            if den.is_zero() {
                return Err(ParseError::new(no, "zero denominator"));
            }
            Ok(Rat::new(num, den))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HeightFunction { heights })
}
