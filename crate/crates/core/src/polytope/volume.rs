use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Polytope;
use crate::exact::{affine_rank, simplex_det, IntVector};

/// Fan decomposition from the lex-least vertex over a vertex-only pulling
/// triangulation of the facets that avoid it.
pub(super) fn normalized_volume(p: &Polytope) -> BigInt {
    let coords: Vec<IntVector> = p.vertices.iter().map(|v| v.coords().to_vec()).collect();
    let incidence: Vec<BTreeSet<usize>> = p
        .facet_vertices()
        .into_iter()
        .map(|f| f.into_iter().collect())
        .collect();
    let apex = 0;
    let mut total = BigInt::zero();
    for facet in &incidence {
        if facet.contains(&apex) {
            continue;
        }
        for cell in pull(&coords, &incidence, facet, p.dim - 1) {
            let mut verts: Vec<&[BigInt]> = vec![&coords[apex]];
            verts.extend(cell.iter().map(|&i| coords[i].as_slice()));
            total += simplex_det(&verts).abs();
        }
    }
    total
}

/// Pulling triangulation of the `k`-face with vertex set `face`, using vertices only.
fn pull(
    coords: &[IntVector],
    incidence: &[BTreeSet<usize>],
    face: &BTreeSet<usize>,
    k: usize,
) -> Vec<Vec<usize>> {
    if face.len() == k + 1 {
        return vec![face.iter().copied().collect()];
    }
    let apex = *face.iter().next().expect("nonempty face");
    let mut subfaces: Vec<BTreeSet<usize>> = incidence
        .iter()
        .map(|f| face.intersection(f).copied().collect::<BTreeSet<usize>>())
        .filter(|s| !s.contains(&apex) && s.len() >= k)
        .filter(|s| {
            let pts: Vec<IntVector> = s.iter().map(|&i| coords[i].clone()).collect();
            affine_rank(&pts) == k - 1
        })
        .collect();
    subfaces.sort();
    subfaces.dedup();
    let mut cells = Vec::new();
    for sub in &subfaces {
        for mut cell in pull(coords, incidence, sub, k - 1) {
            cell.insert(0, apex);
            cells.push(cell);
        }
    }
    cells
}
