//! Triangulations of lattice polytopes on a chosen point set, and the
//! constructive pipeline that produces one with many cells:
//!
//! 1. [`boundary_triangulation`]: triangulate every facet on all of its
//!    points with a recursive pulling rule followed by stellar insertions;
//! 2. [`cone_first_interior`]: cone the boundary complex from the lex-least
//!    interior point;
//! 3. [`Triangulation::stellar_insert`]: insert each remaining interior point
//!    by stellar subdivision of the smallest face containing it.
//!
//! Each insertion of an interior point adds `q * e >= d` cells, where `e` is
//! the dimension of the carrier face and `q >= d - e + 1` the number of cells
//! around it. [`build`] runs the whole pipeline and checks the final count
//! against [`min_bound`](crate::polytope::min_bound).

mod certificate;
mod construct;
mod validate;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::simplex_det;
use crate::polytope::{min_bound, LatticePoint, PointKind, Polytope, PolytopeError};

pub use certificate::{format_certificate, parse_certificate, Certificate};
pub use construct::{
    boundary_triangulation, build, cone_first_interior, BoundaryComplex, Build, InsertionTrace,
    Location,
};
pub use validate::{validate, validate_on, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {0} occurs twice in the configuration")]
    DuplicatePoint(usize),
    #[error("point {0} lies outside the polytope")]
    OutsidePolytope(usize),
    #[error("vertex ({0}) of the polytope is missing from the configuration")]
    MissingVertex(LatticePoint),
    #[error("simplex {simplex} has {found} vertices, expected {expected}")]
    WrongArity {
        simplex: usize,
        expected: usize,
        found: usize,
    },
    #[error("simplex {simplex} refers to point {index}, but there are only {len} points")]
    IndexOutOfRange {
        simplex: usize,
        index: usize,
        len: usize,
    },
    #[error("simplex {0} is degenerate (zero volume)")]
    DegenerateSimplex(usize),
    #[error("point {0} is not interior")]
    NotInterior(usize),
    #[error("point ({0}) is not in the configuration")]
    UnknownPoint(LatticePoint),
    #[error("point ({0}) lies outside the triangulated region")]
    NotLocated(LatticePoint),
    #[error("point ({0}) is already a vertex of the triangulation")]
    AlreadyVertex(LatticePoint),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("constructed triangulation failed validation: {0}")]
    InvalidResult(String),
    #[error("constructed triangulation has {size} cells, below the bound {bound}")]
    BoundViolation { size: usize, bound: BigInt },
}

/// The finite point set a triangulation is built on: every vertex of the
/// polytope plus any other points of it, each flagged boundary or interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    polytope: Polytope,
    points: Vec<LatticePoint>,
    kinds: Vec<PointKind>,
}

impl PointConfig {
    pub fn new(polytope: Polytope, points: Vec<LatticePoint>) -> Result<Self, TriangulationError> {
        let d = polytope.dim();
        let mut seen = BTreeSet::new();
        let mut kinds = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.dim() != d {
                return Err(TriangulationError::DimensionMismatch {
                    index: i,
                    expected: d,
                    found: p.dim(),
                });
            }
            if !seen.insert(p) {
                return Err(TriangulationError::DuplicatePoint(i));
            }
            kinds.push(
                polytope
                    .classify(p.coords())
                    .ok_or(TriangulationError::OutsidePolytope(i))?,
            );
        }
        if let Some(v) = polytope.vertices().iter().find(|v| !seen.contains(v)) {
            return Err(TriangulationError::MissingVertex(v.clone()));
        }
        Ok(PointConfig {
            polytope,
            points,
            kinds,
        })
    }

    /// The configuration of all lattice points of `polytope`, in lex order.
    pub fn lattice(polytope: Polytope) -> Self {
        let census = polytope.lattice_census();
        let mut points: Vec<LatticePoint> = census.boundary;
        points.extend(census.interior);
        points.sort();
        Self::new(polytope, points).expect("lattice points form a valid configuration")
    }

    /// Uses exactly `points` as the configuration; the polytope is their hull.
    pub fn from_points(points: Vec<LatticePoint>) -> Result<Self, TriangulationError> {
        let polytope = Polytope::from_points(&points)?;
        Self::new(polytope, points)
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &LatticePoint {
        &self.points[i]
    }

    pub fn coords(&self, i: usize) -> &[BigInt] {
        self.points[i].coords()
    }

    pub fn kind(&self, i: usize) -> PointKind {
        self.kinds[i]
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Number of configuration points on the boundary.
    pub fn b(&self) -> usize {
        self.kinds
            .iter()
            .filter(|&&k| k == PointKind::Boundary)
            .count()
    }

    /// Number of configuration points in the interior.
    pub fn c(&self) -> usize {
        self.kinds
            .iter()
            .filter(|&&k| k == PointKind::Interior)
            .count()
    }

    /// Indices of points of the given kind, ordered lexicographically by coordinates.
    pub fn indices_lex(&self, kind: PointKind) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).filter(|&i| self.kinds[i] == kind).collect();
        idx.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]));
        idx
    }

    pub(crate) fn simplex_volume(&self, vertices: &[usize]) -> BigInt {
        let refs: Vec<&[BigInt]> = vertices.iter().map(|&i| self.coords(i)).collect();
        simplex_det(&refs).abs()
    }
}

/// A full-dimensional simplex on configuration points, with sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<usize>,
    norm_vol: BigInt,
}

impl Simplex {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `d!` times the Euclidean volume.
    pub fn norm_vol(&self) -> &BigInt {
        &self.norm_vol
    }
}

/// A set of `d`-simplices on a [`PointConfig`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    config: Arc<PointConfig>,
    simplices: Vec<Simplex>,
}

impl Triangulation {
    /// Wraps vertex tuples as simplices. Indices must be in range and every
    /// simplex must have `d + 1` affinely independent vertices; geometric
    /// consistency is left to [`validate`].
    pub fn new(
        config: Arc<PointConfig>,
        cells: Vec<Vec<usize>>,
    ) -> Result<Self, TriangulationError> {
        let d = config.dim();
        let simplices = cells
            .into_iter()
            .enumerate()
            .map(|(s, mut vertices)| {
                if vertices.len() != d + 1 {
                    return Err(TriangulationError::WrongArity {
                        simplex: s,
                        expected: d + 1,
                        found: vertices.len(),
                    });
                }
                if let Some(&index) = vertices.iter().find(|&&i| i >= config.len()) {
                    return Err(TriangulationError::IndexOutOfRange {
                        simplex: s,
                        index,
                        len: config.len(),
                    });
                }
                vertices.sort_unstable();
                let norm_vol = config.simplex_volume(&vertices);
                if norm_vol.is_zero() {
                    return Err(TriangulationError::DegenerateSimplex(s));
                }
                Ok(Simplex { vertices, norm_vol })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Triangulation { config, simplices })
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn shared_config(&self) -> &Arc<PointConfig> {
        &self.config
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.simplices.iter().map(|s| s.vertices.clone()).collect()
    }

    /// Points of the configuration that are vertices of some simplex.
    pub fn used_points(&self) -> BTreeSet<usize> {
        self.simplices
            .iter()
            .flat_map(|s| s.vertices.iter().copied())
            .collect()
    }

    pub fn volume_sum(&self) -> BigInt {
        self.simplices.iter().map(|s| &s.norm_vol).sum()
    }

    /// True iff every simplex has normalized volume 1.
    pub fn is_unimodular(&self) -> bool {
        self.simplices.iter().all(|s| s.norm_vol.is_one())
    }

    pub(crate) fn push_cell(&mut self, mut vertices: Vec<usize>) {
        vertices.sort_unstable();
        let norm_vol = self.config.simplex_volume(&vertices);
        debug_assert!(!norm_vol.is_zero());
        self.simplices.push(Simplex { vertices, norm_vol });
    }
}

/// Whether `p` attains equality in the minimal-volume bound.
pub fn is_castelnuovo(p: &Polytope) -> Result<bool, PolytopeError> {
    let census = p.lattice_census();
    let bound = min_bound(p.dim(), census.b(), census.c())?;
    Ok(p.normalized_volume() == bound)
}
