use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{PointConfig, Triangulation, TriangulationError};
use crate::exact::{affine_rank, barycentric, barycentric_scaled, IntVector};
use crate::polytope::{min_bound, LatticePoint, PointKind, PolytopeError};

/// A triangulation of the boundary of the polytope into `(d-1)`-simplices
/// using every boundary point of the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComplex {
    config: Arc<PointConfig>,
    cells: Vec<Vec<usize>>,
}

impl BoundaryComplex {
    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    /// Sorted `d`-tuples of point indices.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Where a point sits in a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    /// Position of the first simplex (in storage order) containing the point.
    pub simplex: usize,
    pub containing: Vec<usize>,
    /// Vertices with positive barycentric coordinate: the smallest face
    /// containing the point in its relative interior.
    pub face: Vec<usize>,
}

impl Location {
    /// Dimension of the carrier face.
    pub fn e(&self) -> usize {
        self.face.len() - 1
    }
}

/// Record of one stellar insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionTrace {
    /// Stage number `k`: after this step the triangulation uses `k` interior points.
    pub step: usize,
    pub point: usize,
    pub containing: Vec<usize>,
    pub face: Vec<usize>,
    pub e: usize,
    pub q: usize,
    pub removed: Vec<Vec<usize>>,
    pub added: Vec<Vec<usize>>,
}

impl InsertionTrace {
    /// Net change in the number of simplices, `q * e`.
    pub fn increment(&self) -> usize {
        self.added.len() - self.removed.len()
    }
}

/// Output of the full construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Build {
    pub triangulation: Triangulation,
    pub boundary: BoundaryComplex,
    /// Index of the interior point used for the initial cone.
    pub apex: usize,
    pub traces: Vec<InsertionTrace>,
    /// `d*c + (d-1)*b - d^2 + 2` for the configuration's counts.
    pub bound: BigInt,
}

impl Build {
    /// Cell counts of each stage: boundary, cone, then after each insertion.
    pub fn stage_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.boundary.len(), self.boundary.len()];
        let mut cur = self.boundary.len();
        for t in &self.traces {
            cur += t.increment();
            sizes.push(cur);
        }
        sizes
    }
}

/// Triangulates every facet on all configuration points lying on it.
///
/// Each face is handled recursively: its lex-least point `v` is coned over
/// the triangulated faces that avoid `v`, then the face's points not yet used
/// are stellar-inserted in lex order. The result on a face depends only on
/// the points of that face, so neighbouring facets agree on shared ridges.
pub fn boundary_triangulation(
    config: Arc<PointConfig>,
) -> Result<BoundaryComplex, TriangulationError> {
    let polytope = config.polytope();
    let on_facet: Vec<BTreeSet<usize>> = polytope
        .facets()
        .iter()
        .map(|f| {
            (0..config.len())
                .filter(|&i| f.is_tight(config.coords(i)))
                .collect()
        })
        .collect();
    let mut faces = FaceTriangulator {
        config: &config,
        on_facet: &on_facet,
        memo: HashMap::new(),
    };
    let d = config.dim();
    let mut cells = Vec::new();
    for facet in &on_facet {
        let face: Vec<usize> = facet.iter().copied().collect();
        cells.extend(faces.triangulate(&face, d - 1)?);
    }
    for c in &mut cells {
        c.sort_unstable();
    }
    Ok(BoundaryComplex { config, cells })
}

struct FaceTriangulator<'a> {
    config: &'a PointConfig,
    on_facet: &'a [BTreeSet<usize>],
    memo: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl FaceTriangulator<'_> {
    fn coords_of(&self, idx: &[usize]) -> Vec<IntVector> {
        idx.iter()
            .map(|&i| self.config.coords(i).to_vec())
            .collect()
    }

    /// Triangulation of the `k`-dimensional face whose configuration points are `face`.
    fn triangulate(
        &mut self,
        face: &[usize],
        k: usize,
    ) -> Result<Vec<Vec<usize>>, TriangulationError> {
        if face.len() == k + 1 {
            return Ok(vec![face.to_vec()]);
        }
        if let Some(cells) = self.memo.get(face) {
            return Ok(cells.clone());
        }
        let apex = *face
            .iter()
            .min_by(|&&a, &&b| self.config.point(a).cmp(self.config.point(b)))
            .expect("nonempty face");
        let members: BTreeSet<usize> = face.iter().copied().collect();
        let mut subfaces: Vec<Vec<usize>> = self
            .on_facet
            .iter()
            .map(|f| members.intersection(f).copied().collect::<Vec<usize>>())
            .filter(|s| s.len() >= k && !s.contains(&apex))
            .filter(|s| affine_rank(&self.coords_of(s)) + 1 == k)
            .collect();
        subfaces.sort();
        subfaces.dedup();

        let mut cells = Vec::new();
        for sub in &subfaces {
            for mut cell in self.triangulate(sub, k - 1)? {
                cell.push(apex);
                cells.push(cell);
            }
        }
        let used: BTreeSet<usize> = cells.iter().flatten().copied().collect();
        let mut remaining: Vec<usize> =
            face.iter().copied().filter(|i| !used.contains(i)).collect();
        remaining.sort_by(|&a, &b| self.config.point(a).cmp(self.config.point(b)));
        for x in remaining {
            self.insert(&mut cells, x)?;
        }
        self.memo.insert(face.to_vec(), cells.clone());
        Ok(cells)
    }

    /// Stellar subdivision of a lower-dimensional complex at point `x`.
    fn insert(&self, cells: &mut Vec<Vec<usize>>, x: usize) -> Result<(), TriangulationError> {
        let target = self.config.coords(x);
        let mut carrier = None;
        for cell in cells.iter() {
            let Ok(lambda) = barycentric(&self.coords_of(cell), target) else {
                continue;
            };
            if lambda.iter().all(|l| !l.is_negative()) {
                carrier = Some(
                    cell.iter()
                        .zip(&lambda)
                        .filter(|(_, l)| l.is_positive())
                        .map(|(&v, _)| v)
                        .collect::<Vec<usize>>(),
                );
                break;
            }
        }
        let carrier = carrier.ok_or_else(|| {
            TriangulationError::Invariant(format!(
                "face point ({}) not covered by its face triangulation",
                self.config.point(x)
            ))
        })?;
        let (around, keep): (Vec<Vec<usize>>, Vec<Vec<usize>>) = std::mem::take(cells)
            .into_iter()
            .partition(|c| carrier.iter().all(|v| c.contains(v)));
        *cells = keep;
        for cell in around {
            for y in &carrier {
                let mut next: Vec<usize> = cell.iter().copied().filter(|v| v != y).collect();
                next.push(x);
                cells.push(next);
            }
        }
        Ok(())
    }
}

/// Cones every boundary cell from the interior point `apex`.
pub fn cone_first_interior(
    boundary: &BoundaryComplex,
    apex: usize,
) -> Result<Triangulation, TriangulationError> {
    let config = &boundary.config;
    if apex >= config.len() {
        return Err(TriangulationError::IndexOutOfRange {
            simplex: 0,
            index: apex,
            len: config.len(),
        });
    }
    if config.kind(apex) != PointKind::Interior {
        return Err(TriangulationError::NotInterior(apex));
    }
    let cells = boundary
        .cells
        .iter()
        .map(|c| {
            let mut s = c.clone();
            s.push(apex);
            s
        })
        .collect();
    Triangulation::new(Arc::clone(config), cells)
}

impl Triangulation {
    /// Finds the first simplex containing `x` and the smallest face of it
    /// whose relative interior contains `x`.
    pub fn locate(&self, x: &LatticePoint) -> Result<Location, TriangulationError> {
        let cfg = self.config();
        let target = x.coords();
        if self.used_points().iter().any(|&i| cfg.point(i) == x) {
            return Err(TriangulationError::AlreadyVertex(x.clone()));
        }
        for (pos, s) in self.simplices.iter().enumerate() {
            let verts: Vec<&[BigInt]> = s.vertices.iter().map(|&i| cfg.coords(i)).collect();
            if !in_bounding_box(&verts, target) {
                continue;
            }
            let (nums, _) = barycentric_scaled(&verts, target)
                .map_err(|e| TriangulationError::Invariant(e.to_string()))?;
            if nums.iter().any(Signed::is_negative) {
                continue;
            }
            let face = s
                .vertices
                .iter()
                .zip(&nums)
                .filter(|(_, n)| !n.is_zero())
                .map(|(&v, _)| v)
                .collect();
            return Ok(Location {
                simplex: pos,
                containing: s.vertices.clone(),
                face,
            });
        }
        Err(TriangulationError::NotLocated(x.clone()))
    }

    /// Inserts configuration point `point` by stellar subdivision of its carrier face.
    ///
    /// For an interior point the number `q` of simplices around a carrier of
    /// dimension `e` must be at least `d - e + 1`; a smaller value is reported
    /// as an internal invariant violation.
    pub fn stellar_insert(&mut self, point: usize) -> Result<InsertionTrace, TriangulationError> {
        let cfg = Arc::clone(&self.config);
        if point >= cfg.len() {
            return Err(TriangulationError::IndexOutOfRange {
                simplex: 0,
                index: point,
                len: cfg.len(),
            });
        }
        let loc = self.locate(cfg.point(point))?;
        let d = cfg.dim();
        let e = loc.e();
        let (around, keep): (Vec<_>, Vec<_>) = std::mem::take(&mut self.simplices)
            .into_iter()
            .partition(|s| loc.face.iter().all(|v| s.vertices.contains(v)));
        self.simplices = keep;
        let q = around.len();
        if cfg.kind(point) == PointKind::Interior && q < d - e + 1 {
            return Err(TriangulationError::Invariant(format!(
                "only {q} simplices around a {e}-dimensional carrier of an interior point (need {})",
                d - e + 1
            )));
        }
        let removed: Vec<Vec<usize>> = around.iter().map(|s| s.vertices.clone()).collect();
        let mut added = Vec::with_capacity(q * (e + 1));
        for g in &removed {
            for y in &loc.face {
                let mut next: Vec<usize> = g.iter().copied().filter(|v| v != y).collect();
                next.push(point);
                next.sort_unstable();
                added.push(next);
            }
        }
        for cell in &added {
            self.push_cell(cell.clone());
        }
        let step = self
            .used_points()
            .iter()
            .filter(|&&i| cfg.kind(i) == PointKind::Interior)
            .count();
        Ok(InsertionTrace {
            step,
            point,
            containing: loc.containing,
            face: loc.face,
            e,
            q,
            removed,
            added,
        })
    }

    /// [`stellar_insert`](Self::stellar_insert) addressed by coordinates.
    pub fn insert_point(&mut self, x: &LatticePoint) -> Result<InsertionTrace, TriangulationError> {
        let idx = self
            .config
            .index_of(x)
            .ok_or_else(|| TriangulationError::UnknownPoint(x.clone()))?;
        self.stellar_insert(idx)
    }
}

fn in_bounding_box(verts: &[&[BigInt]], x: &[BigInt]) -> bool {
    (0..x.len()).all(|k| {
        let lo = verts.iter().map(|v| &v[k]).min().expect("vertices");
        let hi = verts.iter().map(|v| &v[k]).max().expect("vertices");
        lo <= &x[k] && &x[k] <= hi
    })
}

/// Runs boundary triangulation, coning and stellar insertions, then checks
/// the result against the triangulation axioms and the cell-count bound.
pub fn build(config: Arc<PointConfig>) -> Result<Build, TriangulationError> {
    let d = config.dim();
    let (b, c) = (config.b(), config.c());
    if c == 0 {
        return Err(PolytopeError::NoInteriorPoint.into());
    }
    let bound = min_bound(d, b, c)?;
    let boundary = boundary_triangulation(Arc::clone(&config))?;
    let interior = config.indices_lex(PointKind::Interior);
    let apex = interior[0];
    let mut tri = cone_first_interior(&boundary, apex)?;
    let mut traces = Vec::with_capacity(c - 1);
    for &x in &interior[1..] {
        traces.push(tri.stellar_insert(x)?);
    }
    let report = super::validate(&tri);
    if !report.is_valid() {
        return Err(TriangulationError::InvalidResult(report.to_string()));
    }
    if BigInt::from(tri.len()) < bound {
        return Err(TriangulationError::BoundViolation {
            size: tri.len(),
            bound,
        });
    }
    Ok(Build {
        triangulation: tri,
        boundary,
        apex,
        traces,
        bound,
    })
}
