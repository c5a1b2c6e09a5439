mod common;

use std::sync::Arc;

use common::*;
use minvol::exact::Rat;
use minvol::regularity::{
    regularity_certificate, verify_heights, HeightFunction, LiftingSystem, Regularity,
};
use minvol::triangulation::{build, validate, PointConfig, Triangulation};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn r(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

const NESTED: [[i64; 2]; 6] = [[0, 0], [4, 0], [0, 4], [1, 1], [2, 1], [1, 2]];
const TWISTED: [[usize; 3]; 7] = [
    [0, 1, 4],
    [1, 2, 5],
    [2, 0, 3],
    [0, 3, 4],
    [1, 4, 5],
    [2, 5, 3],
    [3, 4, 5],
];

fn twisted() -> Triangulation {
    let cfg = PointConfig::from_points(NESTED.iter().map(|p| lp(p)).collect()).unwrap();
    Triangulation::new(Arc::new(cfg), TWISTED.iter().map(|c| c.to_vec()).collect()).unwrap()
}

/// Fourier-Motzkin feasibility of `a . x >= b` over the rationals.
fn fm_feasible(mut rows: Vec<(Vec<Rat>, Rat)>, vars: usize) -> bool {
    for k in 0..vars {
        let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|(a, _)| a[k].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(a, _)| a[k].is_negative());
        rows = zero;
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // Scale so the k-th coefficients cancel: ap/ap_k - an/an_k.
                let sp = ap[k].recip();
                let sn = -an[k].recip();
                let a: Vec<Rat> = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                rows.push((a, bp * &sp + bn * &sn));
            }
        }
    }
    rows.iter().all(|(_, b)| !b.is_positive())
}

/// Lifting constraints for the nested-triangles fixture computed from scratch
/// (2-d Cramer), with the outer vertices gauged to height zero.
fn nested_lifting_rows() -> Vec<(Vec<Rat>, Rat)> {
    let p = |i: usize| (r(NESTED[i][0]), r(NESTED[i][1]));
    let mut rows = Vec::new();
    for cell in TWISTED {
        let (a, b, c) = (p(cell[0]), p(cell[1]), p(cell[2]));
        let den = (&b.0 - &a.0) * (&c.1 - &a.1) - (&c.0 - &a.0) * (&b.1 - &a.1);
        for v in 0..6 {
            if cell.contains(&v) {
                continue;
            }
            let x = p(v);
            let l1 = ((&x.0 - &a.0) * (&c.1 - &a.1) - (&c.0 - &a.0) * (&x.1 - &a.1)) / &den;
            let l2 = ((&b.0 - &a.0) * (&x.1 - &a.1) - (&x.0 - &a.0) * (&b.1 - &a.1)) / &den;
            let l0 = r(1) - &l1 - &l2;
            let mut full = vec![Rat::zero(); 6];
            full[v] += r(1);
            full[cell[0]] -= l0;
            full[cell[1]] -= l1;
            full[cell[2]] -= l2;
            // Heights of points 0, 1, 2 are fixed to zero.
            rows.push((full[3..].to_vec(), r(1)));
        }
    }
    rows
}

#[test]
fn twisted_nested_triangles_are_not_regular() {
    let t = twisted();
    assert!(validate(&t).is_valid());
    assert!(!fm_feasible(nested_lifting_rows(), 3), "oracle must agree");
    let Regularity::NotRegular(cert) = regularity_certificate(&t) else {
        panic!("twisted triangulation reported regular");
    };
    assert!(cert.verify(&LiftingSystem::new(&t)));
}

#[test]
fn fm_oracle_accepts_a_regular_polygon_triangulation() {
    // Same points, triangulated by coning from the inner triangle's vertices
    // in the regular (untwisted) way obtained from the pipeline.
    let cfg = Arc::new(PointConfig::from_points(NESTED.iter().map(|p| lp(p)).collect()).unwrap());
    let out = build(cfg).unwrap();
    let Regularity::Regular(h) = regularity_certificate(&out.triangulation) else {
        panic!("pipeline output on the nested points should be regular");
    };
    assert!(verify_heights(&out.triangulation, &h));
}

#[test]
fn cube_build_is_regular() {
    let out = build(lattice_config(boxed(&[2, 2, 2]))).unwrap();
    let t = &out.triangulation;
    let Regularity::Regular(h) = regularity_certificate(t) else {
        panic!("expected regular");
    };
    assert!(verify_heights(t, &h));

    // Push a corner far below: constraints with it as the outside point break.
    let mut low = h.clone();
    low.heights[0] -= r(1_000_000);
    assert!(!verify_heights(t, &low));
    let system = LiftingSystem::new(t);
    assert!(system
        .constraints
        .iter()
        .filter(|c| c.point == 0)
        .any(|c| !c.evaluate(&low).is_positive()));

    let zero = HeightFunction {
        heights: vec![Rat::zero(); t.config().len()],
    };
    assert!(!verify_heights(t, &zero));
    assert!(!verify_heights(t, &HeightFunction { heights: vec![] }));
}

#[test]
fn pyramid_build_is_regular() {
    let out = build(pyramid_config()).unwrap();
    let Regularity::Regular(h) = regularity_certificate(&out.triangulation) else {
        panic!("expected regular");
    };
    assert!(verify_heights(&out.triangulation, &h));
}
