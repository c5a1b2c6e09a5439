#![allow(dead_code)]

use std::sync::Arc;

use minvol::polytope::{LatticePoint, Polytope};
use minvol::triangulation::PointConfig;

pub fn lp(xs: &[i64]) -> LatticePoint {
    LatticePoint::from_i64s(xs)
}

pub fn boxed(sides: &[i64]) -> Polytope {
    let d = sides.len();
    let pts: Vec<LatticePoint> = (0..1u32 << d)
        .map(|mask| {
            let c: Vec<i64> = (0..d)
                .map(|k| if mask >> k & 1 == 1 { sides[k] } else { 0 })
                .collect();
            lp(&c)
        })
        .collect();
    Polytope::from_points(&pts).unwrap()
}

pub fn dilated_simplex(d: usize, k: i64) -> Polytope {
    let mut pts = vec![lp(&vec![0; d])];
    for i in 0..d {
        let mut c = vec![0; d];
        c[i] = k;
        pts.push(lp(&c));
    }
    Polytope::from_points(&pts).unwrap()
}

/// Square pyramid ABCDE with one extra boundary point y1 (centre of the base)
/// and two interior points; x2 sits inside the triangle (x1, y1, D).
pub fn pyramid_points() -> Vec<LatticePoint> {
    vec![
        lp(&[3, 3, 9]), // A
        lp(&[0, 0, 0]), // B
        lp(&[6, 0, 0]), // C
        lp(&[6, 6, 0]), // D
        lp(&[0, 6, 0]), // E
        lp(&[3, 3, 0]), // y1
        lp(&[3, 3, 3]), // x1
        lp(&[4, 4, 1]), // x2
    ]
}

pub fn pyramid_config() -> Arc<PointConfig> {
    Arc::new(PointConfig::from_points(pyramid_points()).unwrap())
}

pub fn lattice_config(p: Polytope) -> Arc<PointConfig> {
    Arc::new(PointConfig::lattice(p))
}
