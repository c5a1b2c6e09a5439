//! Incremental beneath-beyond convex hull in exact arithmetic.
//!
//! Facets are kept as hyperplanes rather than simplicial patches, so coplanar
//! pieces never arise: a new cone facet that lands on an existing hyperplane
//! is merged by exact `(normal, offset)` equality.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Facet, LatticePoint, Polytope, PolytopeError};
use crate::exact::{affine_rank, dot, orthogonal_complement, primitive, rank, sub, IntVector};

/// Convex hull of a full-dimensional lattice point set.
pub fn convex_hull(points: &[LatticePoint]) -> Result<Polytope, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::Empty)?;
    let d = first.dim();
    if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != d) {
        return Err(PolytopeError::MixedDimensions {
            index,
            expected: d,
            found: p.dim(),
        });
    }
    if d < 2 {
        return Err(PolytopeError::UnsupportedDimension(d));
    }
    let mut pts: Vec<&LatticePoint> = points.iter().collect();
    pts.sort();
    pts.dedup();
    let coords: Vec<IntVector> = pts.iter().map(|p| p.coords().to_vec()).collect();
    let r = affine_rank(&coords);
    if r < d {
        return Err(PolytopeError::LowerDimensional { rank: r, dim: d });
    }

    let basis = initial_simplex(&coords, d);
    let scale = BigInt::from(d + 1);
    let interior: IntVector = (0..d)
        .map(|k| basis.iter().map(|&i| &coords[i][k]).sum())
        .collect();
    let hull = Hull {
        coords: &coords,
        interior,
        scale,
        d,
    };

    let mut facets: Vec<Facet> = (0..=d)
        .map(|skip| {
            let on: Vec<usize> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &i)| i)
                .collect();
            hull.plane_through(&on)
        })
        .collect();
    let mut verts: Vec<usize> = basis.clone();

    for p in 0..coords.len() {
        if basis.contains(&p) {
            continue;
        }
        let x = &coords[p];
        let (visible, hidden): (Vec<Facet>, Vec<Facet>) =
            facets.into_iter().partition(|f| f.slack(x).is_negative());
        if visible.is_empty() {
            facets = hidden;
            continue;
        }
        let mut next = hidden.clone();
        for f in &visible {
            for g in &hidden {
                let ridge: Vec<usize> = verts
                    .iter()
                    .copied()
                    .filter(|&v| f.is_tight(&coords[v]) && g.is_tight(&coords[v]))
                    .collect();
                if ridge.len() < d - 1 {
                    continue;
                }
                let ridge_pts: Vec<IntVector> = ridge.iter().map(|&v| coords[v].clone()).collect();
                if affine_rank(&ridge_pts) != d - 2 {
                    continue;
                }
                let mut on = independent_subset(&coords, &ridge, d - 1);
                on.push(p);
                next.push(hull.plane_through(&on));
            }
        }
        next.sort();
        next.dedup();
        facets = next;
        verts.push(p);
        verts.retain(|&v| is_vertex(&facets, &coords[v], d));
    }

    facets.sort();
    let mut vertices: Vec<LatticePoint> = verts.iter().map(|&v| pts[v].clone()).collect();
    vertices.sort();
    Ok(Polytope {
        dim: d,
        vertices,
        facets,
    })
}

struct Hull<'a> {
    coords: &'a [IntVector],
    /// `scale` times a point strictly inside every intermediate hull.
    interior: IntVector,
    scale: BigInt,
    d: usize,
}

impl Hull<'_> {
    /// Oriented facet hyperplane through `d` affinely independent points.
    fn plane_through(&self, on: &[usize]) -> Facet {
        debug_assert_eq!(on.len(), self.d);
        let base = &self.coords[on[0]];
        let diffs: Vec<IntVector> = on[1..]
            .iter()
            .map(|&i| sub(&self.coords[i], base))
            .collect();
        let mut normal = primitive(&orthogonal_complement(&diffs));
        let mut offset = dot(&normal, base);
        let probe = dot(&normal, &self.interior) - &offset * &self.scale;
        debug_assert!(!probe.is_zero(), "reference point on a facet hyperplane");
        if probe.is_positive() {
            normal.iter_mut().for_each(|c| *c = -&*c);
            offset = -offset;
        }
        Facet::new(normal, offset)
    }
}

/// Greedy lex-first choice of `d + 1` affinely independent points.
fn initial_simplex(coords: &[IntVector], d: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut diffs: Vec<IntVector> = Vec::new();
    for i in 1..coords.len() {
        diffs.push(sub(&coords[i], &coords[0]));
        if rank(&diffs) == diffs.len() {
            chosen.push(i);
            if chosen.len() == d + 1 {
                break;
            }
        } else {
            diffs.pop();
        }
    }
    chosen
}

/// Picks `count` affinely independent indices from `from`, greedily in order.
fn independent_subset(coords: &[IntVector], from: &[usize], count: usize) -> Vec<usize> {
    let mut chosen = vec![from[0]];
    let mut diffs: Vec<IntVector> = Vec::new();
    for &i in &from[1..] {
        if chosen.len() == count {
            break;
        }
        diffs.push(sub(&coords[i], &coords[from[0]]));
        if rank(&diffs) == diffs.len() {
            chosen.push(i);
        } else {
            diffs.pop();
        }
    }
    chosen
}

/// A boundary point is a vertex iff the normals of its tight facets span `R^d`.
fn is_vertex(facets: &[Facet], x: &[BigInt], d: usize) -> bool {
    let normals: Vec<IntVector> = facets
        .iter()
        .filter(|f| f.is_tight(x))
        .map(|f| f.normal().to_vec())
        .collect();
    normals.len() >= d && rank(&normals) == d
}
