//! Mechanical check of the four triangulation axioms.
//!
//! * (i) simplex vertices are configuration points (restricted to a subset
//!   for [`validate_on`]);
//! * (ii) every configuration point is a vertex of some simplex;
//! * (iii) any two simplices meet in a common face, tested exactly per pair;
//! * (iv) the simplices cover the polytope, via the volume sum.
//!
//! (iii) and (iv) together force the union to be the whole polytope, since
//! proper intersections have measure zero.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::Triangulation;
use crate::exact::{dot, orthogonal_complement, sub, IntVector, Rat};
use crate::lp::feasible_point;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Axiom (i): a simplex uses a point outside the allowed set.
    ForeignVertex { simplex: usize, point: usize },
    /// Axiom (ii): a point of the set is not a vertex of any simplex.
    UnusedPoint { point: usize },
    /// Axiom (iii): the same simplex occurs twice.
    DuplicateSimplex { first: usize, second: usize },
    /// Axiom (iii): the intersection is not the face spanned by shared vertices.
    ImproperIntersection { first: usize, second: usize },
    /// Axiom (iv): normalized volumes do not add up to the polytope's.
    VolumeMismatch { sum: BigInt, expected: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ForeignVertex { simplex, point } => {
                write!(
                    f,
                    "axiom (i): simplex {simplex} uses point {point} outside the point set"
                )
            }
            Violation::UnusedPoint { point } => {
                write!(
                    f,
                    "axiom (ii): point {point} is not a vertex of any simplex"
                )
            }
            Violation::DuplicateSimplex { first, second } => {
                write!(f, "axiom (iii): simplices {first} and {second} coincide")
            }
            Violation::ImproperIntersection { first, second } => write!(
                f,
                "axiom (iii): simplices {first} and {second} do not meet in a common face"
            ),
            Violation::VolumeMismatch { sum, expected } => write!(
                f,
                "axiom (iv): normalized volumes sum to {sum}, polytope has {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the axioms with the whole configuration as the point set.
pub fn validate(t: &Triangulation) -> ValidationReport {
    let all: BTreeSet<usize> = (0..t.config().len()).collect();
    validate_on(t, &all)
}

/// Checks the axioms for a triangulation on the subset `points` of the configuration.
pub fn validate_on(t: &Triangulation, points: &BTreeSet<usize>) -> ValidationReport {
    let mut violations = Vec::new();
    for (s, simplex) in t.simplices().iter().enumerate() {
        for &p in simplex.vertices() {
            if !points.contains(&p) {
                violations.push(Violation::ForeignVertex {
                    simplex: s,
                    point: p,
                });
            }
        }
    }
    let used = t.used_points();
    for &p in points {
        if !used.contains(&p) {
            violations.push(Violation::UnusedPoint { point: p });
        }
    }

    let geo: Vec<SimplexGeometry> = t
        .simplices()
        .iter()
        .map(|s| SimplexGeometry::new(t, s.vertices()))
        .collect();
    let m = geo.len();
    let pair_violations: Vec<Violation> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let geo = &geo;
            (i + 1..m).filter_map(move |j| check_pair(&geo[i], &geo[j], i, j))
        })
        .collect();
    violations.extend(pair_violations);

    let sum = t.volume_sum();
    let expected = t.config().polytope().normalized_volume();
    if sum != expected {
        violations.push(Violation::VolumeMismatch { sum, expected });
    }
    ValidationReport { violations }
}

struct SimplexGeometry {
    vertices: Vec<usize>,
    coords: Vec<IntVector>,
    lo: IntVector,
    hi: IntVector,
    /// Facet `k` is opposite vertex `k`: `normal . x <= offset` on the simplex.
    facets: Vec<(IntVector, BigInt)>,
}

impl SimplexGeometry {
    fn new(t: &Triangulation, vertices: &[usize]) -> Self {
        let cfg = t.config();
        let coords: Vec<IntVector> = vertices.iter().map(|&v| cfg.coords(v).to_vec()).collect();
        let d = cfg.dim();
        let lo = (0..d)
            .map(|k| {
                coords
                    .iter()
                    .map(|c| &c[k])
                    .min()
                    .expect("vertices")
                    .clone()
            })
            .collect();
        let hi = (0..d)
            .map(|k| {
                coords
                    .iter()
                    .map(|c| &c[k])
                    .max()
                    .expect("vertices")
                    .clone()
            })
            .collect();
        let facets = (0..=d)
            .map(|skip| {
                let on: Vec<&IntVector> =
                    (0..=d).filter(|&j| j != skip).map(|j| &coords[j]).collect();
                let diffs: Vec<IntVector> = on[1..].iter().map(|c| sub(c, on[0])).collect();
                let mut normal = orthogonal_complement(&diffs);
                let mut offset = dot(&normal, on[0]);
                if dot(&normal, &coords[skip]) > offset {
                    normal.iter_mut().for_each(|c| *c = -&*c);
                    offset = -offset;
                }
                (normal, offset)
            })
            .collect();
        SimplexGeometry {
            vertices: vertices.to_vec(),
            coords,
            lo,
            hi,
            facets,
        }
    }

    fn boxes_overlap(&self, other: &Self) -> bool {
        (0..self.lo.len()).all(|k| self.lo[k] <= other.hi[k] && other.lo[k] <= self.hi[k])
    }
}

fn check_pair(a: &SimplexGeometry, b: &SimplexGeometry, i: usize, j: usize) -> Option<Violation> {
    if !a.boxes_overlap(b) {
        return None;
    }
    let shared: Vec<usize> = a
        .vertices
        .iter()
        .copied()
        .filter(|v| b.vertices.contains(v))
        .collect();
    if shared.len() == a.vertices.len() {
        return Some(Violation::DuplicateSimplex {
            first: i,
            second: j,
        });
    }
    if separated(a, b, &shared) || separated(b, a, &shared) {
        return None;
    }
    if overlaps_beyond_shared(a, b, &shared) {
        Some(Violation::ImproperIntersection {
            first: i,
            second: j,
        })
    } else {
        None
    }
}

/// Some facet hyperplane of `a` has `b` on its far side, touching it only in shared vertices.
fn separated(a: &SimplexGeometry, b: &SimplexGeometry, shared: &[usize]) -> bool {
    a.facets.iter().any(|(normal, offset)| {
        b.coords.iter().zip(&b.vertices).all(|(w, v)| {
            let val = dot(normal, w);
            match val.cmp(offset) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => shared.contains(v),
                std::cmp::Ordering::Less => false,
            }
        })
    })
}

/// Exact LP: is there a point of `a ∩ b` with positive weight on a vertex of
/// `a` that `b` does not share?
fn overlaps_beyond_shared(a: &SimplexGeometry, b: &SimplexGeometry, shared: &[usize]) -> bool {
    let d = a.lo.len();
    let n = a.coords.len() + b.coords.len();
    let int = |v: &BigInt| Rat::from_integer(v.clone());
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut row: Vec<Rat> = a.coords.iter().map(|c| int(&c[k])).collect();
        row.extend(b.coords.iter().map(|c| -int(&c[k])));
        rows.push(row);
    }
    let mut balance = vec![Rat::one(); a.coords.len()];
    balance.extend(vec![-Rat::one(); b.coords.len()]);
    rows.push(balance);
    let mut weight: Vec<Rat> = a
        .vertices
        .iter()
        .map(|v| {
            if shared.contains(v) {
                Rat::zero()
            } else {
                Rat::one()
            }
        })
        .collect();
    weight.resize(n, Rat::zero());
    rows.push(weight);
    let mut rhs = vec![Rat::zero(); d + 1];
    rhs.push(Rat::one());
    let x = feasible_point(&rows, &rhs);
    debug_assert!(x
        .as_ref()
        .is_none_or(|x| x.iter().all(|v| !v.is_negative())));
    x.is_some()
}
