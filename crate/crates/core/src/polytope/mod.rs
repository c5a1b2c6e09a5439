//! Full-dimensional lattice polytopes: hulls, facets, lattice-point census,
//! normalized volume and the minimal-volume bound.

mod hull;
pub(crate) mod text;
mod volume;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{dot, IntVector, Rat};

pub use hull::convex_hull;
pub use text::{format_points, parse_points, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("no points given")]
    Empty,
    #[error("point {index} has dimension {found}, expected {expected}")]
    MixedDimensions {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension {0} is not supported (need d >= 2)")]
    UnsupportedDimension(usize),
    #[error("points span an affine space of dimension {rank}, not {dim}")]
    LowerDimensional { rank: usize, dim: usize },
    #[error("the bound requires an interior lattice point (c = 0)")]
    NoInteriorPoint,
    #[error("bound arguments out of range: d = {d}, b = {b}, c = {c}")]
    BoundDomain { d: usize, b: usize, c: usize },
}

/// A point of the integer lattice; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(IntVector);

impl LatticePoint {
    pub fn new(coords: IntVector) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> IntVector {
        self.0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Facet inequality `normal . x <= offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    normal: IntVector,
    offset: BigInt,
}

impl Facet {
    pub(crate) fn new(normal: IntVector, offset: BigInt) -> Self {
        Facet { normal, offset }
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// `offset - normal . x`; nonnegative on the polytope, zero on the facet's hyperplane.
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        &self.offset - dot(&self.normal, x)
    }

    pub fn is_tight(&self, x: &[BigInt]) -> bool {
        self.slack(x).is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    Boundary,
    Interior,
}

/// A full-dimensional lattice polytope given by its vertices and irredundant facets.
///
/// Vertices are sorted lexicographically, so `vertices()[0]` is the lex-least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
}

impl Polytope {
    /// Hull of the given generators.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self, PolytopeError> {
        convex_hull(points)
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self, PolytopeError> {
        let pts: Vec<LatticePoint> = points.iter().map(|p| LatticePoint::from_i64s(p)).collect();
        convex_hull(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// Boundary/interior classification, or `None` when `x` lies outside.
    pub fn classify(&self, x: &[BigInt]) -> Option<PointKind> {
        let mut kind = PointKind::Interior;
        for f in &self.facets {
            let s = f.slack(x);
            if s.is_negative() {
                return None;
            }
            if s.is_zero() {
                kind = PointKind::Boundary;
            }
        }
        Some(kind)
    }

    /// Indices of facets whose hyperplane contains `x`.
    pub fn tight_facets(&self, x: &[BigInt]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].is_tight(x))
            .collect()
    }

    /// For each facet, the indices of the vertices lying on it.
    pub fn facet_vertices(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| {
                (0..self.vertices.len())
                    .filter(|&v| f.is_tight(self.vertices[v].coords()))
                    .collect()
            })
            .collect()
    }

    /// Coordinate-wise bounding box `(min, max)` of the vertices.
    pub fn bounding_box(&self) -> (IntVector, IntVector) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (k, c) in v.coords().iter().enumerate() {
                if c < &lo[k] {
                    lo[k] = c.clone();
                }
                if c > &hi[k] {
                    hi[k] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    /// All lattice points of the polytope, split into boundary and interior.
    pub fn lattice_census(&self) -> PointCensus {
        let (lo, hi) = self.bounding_box();
        let mut boundary = Vec::new();
        let mut interior = Vec::new();
        let mut cur = lo.clone();
        loop {
            match self.classify(&cur) {
                Some(PointKind::Boundary) => boundary.push(LatticePoint(cur.clone())),
                Some(PointKind::Interior) => interior.push(LatticePoint(cur.clone())),
                None => {}
            }
            // Odometer step, last coordinate fastest: visits points in lex order.
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return PointCensus { boundary, interior };
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo[k].clone();
            }
        }
    }

    /// `d! * vol(P)` via a vertex-only pulling triangulation of the boundary.
    pub fn normalized_volume(&self) -> BigInt {
        volume::normalized_volume(self)
    }

    /// Lebesgue volume.
    pub fn volume(&self) -> Rat {
        BigRational::new(self.normalized_volume(), factorial(self.dim))
    }
}

/// Lattice points of a polytope, each list in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCensus {
    pub boundary: Vec<LatticePoint>,
    pub interior: Vec<LatticePoint>,
}

impl PointCensus {
    pub fn b(&self) -> usize {
        self.boundary.len()
    }

    pub fn c(&self) -> usize {
        self.interior.len()
    }

    pub fn total(&self) -> usize {
        self.b() + self.c()
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Normalized form of the minimal-volume bound: `d*c + (d-1)*b - d^2 + 2`.
///
/// Dividing by `d!` gives the lower bound on the volume of a lattice
/// `d`-polytope with `b` boundary and `c > 0` interior lattice points.
pub fn min_bound(d: usize, b: usize, c: usize) -> Result<BigInt, PolytopeError> {
    if c == 0 {
        return Err(PolytopeError::NoInteriorPoint);
    }
    if d < 2 || b < d + 1 {
        return Err(PolytopeError::BoundDomain { d, b, c });
    }
    let (d, b, c) = (BigInt::from(d), BigInt::from(b), BigInt::from(c));
    Ok(&d * &c + (&d - 1) * &b - &d * &d + 2)
}
