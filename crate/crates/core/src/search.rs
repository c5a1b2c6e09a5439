//! Seeded surveys of small lattice polytopes and a search for Castelnuovo
//! simplices with exactly `d + 1` boundary lattice points.
//!
//! Draws are numbered. Random draw `i` uses a ChaCha stream selected by `i`
//! under the run's seed, so a draw never depends on its neighbours; exhaustive
//! draws walk the `(d+1)`-subsets of the box in lexicographic order. Batches
//! are evaluated in parallel and merged by draw index.

use std::collections::HashSet;
use std::fmt::{self, Write};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::polytope::{min_bound, LatticePoint, Polytope, PolytopeError};
use crate::regularity::regularity_certificate;
use crate::triangulation::{build, PointConfig, TriangulationError};

const BATCH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub dim: usize,
    /// Coordinates are drawn from `[0, box_size]`.
    pub box_size: i64,
    /// Number of draws.
    pub samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
    /// Regularity is decided only when the configuration has at most this many points.
    pub regularity_cap: Option<usize>,
    pub require_interior: bool,
}

impl SearchParams {
    pub fn new(dim: usize, box_size: i64, samples: usize, seed: u64) -> Self {
        SearchParams {
            dim,
            box_size,
            samples,
            seed,
            exhaustive: false,
            regularity_cap: Some(25),
            require_interior: true,
        }
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.dim < 2 {
            return Err(SearchError::InvalidParams(format!(
                "dimension {} < 2",
                self.dim
            )));
        }
        if self.box_size < 1 {
            return Err(SearchError::InvalidParams(format!(
                "box size {} < 1",
                self.box_size
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    LowerDimensional,
    NoInteriorPoint,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::LowerDimensional => "lower-dimensional",
            Rejection::NoInteriorPoint => "no-interior-point",
        })
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search parameters: {0}")]
    InvalidParams(String),
    #[error("bound violated by [{witness}]: normalized volume {volume} < {bound}")]
    BoundViolation {
        witness: String,
        volume: BigInt,
        bound: BigInt,
    },
    #[error("triangulation of [{witness}] failed: {source}")]
    Build {
        witness: String,
        #[source]
        source: TriangulationError,
    },
    #[error("no Castelnuovo simplex with d = {d}, c = {c} and coefficients up to {cap}")]
    NotFound { d: usize, c: usize, cap: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularCheck {
    Regular,
    NotRegular,
    /// Configuration larger than the regularity cap.
    Skipped,
    /// No triangulation was built for this row.
    NotRun,
}

impl fmt::Display for RegularCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegularCheck::Regular => "true",
            RegularCheck::NotRegular => "false",
            RegularCheck::Skipped => "skipped",
            RegularCheck::NotRun => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub d: usize,
    pub b: usize,
    pub c: usize,
    pub normalized_volume: BigInt,
    /// `None` when `c = 0`.
    pub bound: Option<BigInt>,
    pub castelnuovo: bool,
    /// Built only for Castelnuovo rows.
    pub unimodular_build: Option<bool>,
    pub regular_build: RegularCheck,
    pub witness: Vec<LatticePoint>,
}

impl SurveyRow {
    pub const HEADER: &'static str =
        "d\tb\tc\tnormalized_volume\tbound\tcastelnuovo\tunimodular_build\tregular_build\twitness";

    pub fn to_tsv(&self) -> String {
        let bound = self
            .bound
            .as_ref()
            .map_or("-".to_string(), BigInt::to_string);
        let unimodular = self
            .unimodular_build
            .map_or("-".to_string(), |u| u.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t\"{}\"",
            self.d,
            self.b,
            self.c,
            self.normalized_volume,
            bound,
            self.castelnuovo,
            unimodular,
            self.regular_build,
            vertex_list(&self.witness)
        )
    }
}

/// `(x,y,...);(x,y,...)`
pub fn vertex_list(points: &[LatticePoint]) -> String {
    let mut out = String::new();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        let coords: Vec<String> = p.coords().iter().map(BigInt::to_string).collect();
        write!(out, "({})", coords.join(",")).expect("writing to a String");
    }
    out
}

pub fn format_survey(rows: &[SurveyRow]) -> String {
    let mut out = format!("{}\n", SurveyRow::HEADER);
    for r in rows {
        out.push_str(&r.to_tsv());
        out.push('\n');
    }
    out
}

/// Point set of random draw `index`: between `d + 1` and `2d` points of the box.
pub fn random_points(params: &SearchParams, index: u64) -> Vec<LatticePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let d = params.dim;
    let n = rng.gen_range(d + 1..=2 * d);
    (0..n)
        .map(|_| {
            LatticePoint::new(
                (0..d)
                    .map(|_| BigInt::from(rng.gen_range(0..=params.box_size)))
                    .collect(),
            )
        })
        .collect()
}

/// Hull of random draw `index`, or the reason it is rejected.
pub fn random_polytope(params: &SearchParams, index: u64) -> Result<Polytope, Rejection> {
    accept(&random_points(params, index), params.require_interior)
}

fn accept(points: &[LatticePoint], require_interior: bool) -> Result<Polytope, Rejection> {
    let p = Polytope::from_points(points).map_err(|e| match e {
        PolytopeError::LowerDimensional { .. } => Rejection::LowerDimensional,
        other => unreachable!("box points always form a valid input: {other}"),
    })?;
    if require_interior && p.lattice_census().c() == 0 {
        return Err(Rejection::NoInteriorPoint);
    }
    Ok(p)
}

/// Vertex set translated so every coordinate minimum is zero.
fn translation_key(p: &Polytope) -> Vec<LatticePoint> {
    let (lo, _) = p.bounding_box();
    let mut key: Vec<LatticePoint> = p
        .vertices()
        .iter()
        .map(|v| LatticePoint::new(v.coords().iter().zip(&lo).map(|(x, l)| x - l).collect()))
        .collect();
    key.sort();
    key
}

/// Census, bound and Castelnuovo flag of `p`; builds the triangulation on
/// all lattice points for Castelnuovo polytopes.
pub fn survey_row(p: &Polytope, regularity_cap: Option<usize>) -> Result<SurveyRow, SearchError> {
    let census = p.lattice_census();
    let (b, c) = (census.b(), census.c());
    let volume = p.normalized_volume();
    let bound = (c > 0).then(|| min_bound(p.dim(), b, c).expect("full-dimensional with c > 0"));
    if let Some(bound) = &bound {
        if &volume < bound {
            return Err(SearchError::BoundViolation {
                witness: vertex_list(p.vertices()),
                volume,
                bound: bound.clone(),
            });
        }
    }
    let castelnuovo = bound.as_ref() == Some(&volume);
    let mut row = SurveyRow {
        d: p.dim(),
        b,
        c,
        normalized_volume: volume,
        bound,
        castelnuovo,
        unimodular_build: None,
        regular_build: RegularCheck::NotRun,
        witness: p.vertices().to_vec(),
    };
    if castelnuovo {
        let config = Arc::new(PointConfig::lattice(p.clone()));
        let out = build(config).map_err(|source| SearchError::Build {
            witness: vertex_list(p.vertices()),
            source,
        })?;
        let t = out.triangulation;
        row.unimodular_build = Some(t.is_unimodular());
        row.regular_build = match regularity_cap {
            Some(cap) if t.config().len() <= cap => {
                if regularity_certificate(&t).is_regular() {
                    RegularCheck::Regular
                } else {
                    RegularCheck::NotRegular
                }
            }
            _ => RegularCheck::Skipped,
        };
    }
    Ok(row)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        self.current = (0..k).rev().find(|&i| next[i] < self.n - k + i).map(|i| {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            next
        });
        Some(out)
    }
}

fn box_points(d: usize, k: i64) -> Vec<LatticePoint> {
    let mut pts = vec![Vec::new()];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<BigInt>| {
                (0..=k).map(move |x| {
                    let mut q = p.clone();
                    q.push(BigInt::from(x));
                    q
                })
            })
            .collect();
    }
    pts.into_iter().map(LatticePoint::new).collect()
}

/// Runs `params.samples` draws and returns one row per accepted, new polytope,
/// in draw order. A polytope violating the volume bound aborts the run.
pub fn survey(params: &SearchParams) -> Result<Vec<SurveyRow>, SearchError> {
    let mut rows = Vec::new();
    survey_each(params, |r| rows.push(r))?;
    Ok(rows)
}

/// As [`survey`], handing rows to `sink` one batch at a time.
pub fn survey_each(
    params: &SearchParams,
    mut sink: impl FnMut(SurveyRow),
) -> Result<(), SearchError> {
    params.check()?;
    let grid = if params.exhaustive {
        box_points(params.dim, params.box_size)
    } else {
        Vec::new()
    };
    let mut subsets = Subsets::new(grid.len(), params.dim + 1);
    let mut seen = HashSet::new();
    let mut start = 0;
    while start < params.samples {
        let end = (start + BATCH).min(params.samples);
        let draws: Vec<Vec<LatticePoint>> = if params.exhaustive {
            subsets
                .by_ref()
                .take(end - start)
                .map(|s| s.iter().map(|&i| grid[i].clone()).collect())
                .collect()
        } else {
            (start..end)
                .map(|i| random_points(params, i as u64))
                .collect()
        };
        if draws.is_empty() {
            break;
        }
        let accepted: Vec<Result<Polytope, Rejection>> = draws
            .par_iter()
            .map(|pts| accept(pts, params.require_interior))
            .collect();
        let fresh: Vec<Polytope> = accepted
            .into_iter()
            .filter_map(Result::ok)
            .filter(|p| seen.insert(translation_key(p)))
            .collect();
        let batch: Vec<SurveyRow> = fresh
            .par_iter()
            .map(|p| survey_row(p, params.regularity_cap))
            .collect::<Result<_, _>>()?;
        batch.into_iter().for_each(&mut sink);
        start = end;
    }
    Ok(())
}

/// The simplex `conv{0, e_1, ..., e_(d-1), (a, d c + 1)}`.
pub fn castelnuovo_candidate(a: &[i64], c: usize) -> Polytope {
    let d = a.len() + 1;
    let mut pts = vec![LatticePoint::new(vec![BigInt::from(0); d])];
    for i in 0..d - 1 {
        let mut e = vec![BigInt::from(0); d];
        e[i] = BigInt::from(1);
        pts.push(LatticePoint::new(e));
    }
    let mut apex: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    apex.push(BigInt::from(d * c + 1));
    pts.push(LatticePoint::new(apex));
    Polytope::from_points(&pts).expect("the candidate simplex is full-dimensional")
}

/// First member of the candidate family, with `a` in lexicographic order over
/// `[0, cap]^(d-1)`, whose census is exactly `b = d + 1` and `c`.
pub fn castelnuovo_simplex_search(d: usize, c: usize, cap: i64) -> Result<Polytope, SearchError> {
    if d < 3 || c < 1 || cap < 0 {
        return Err(SearchError::InvalidParams(format!(
            "need d >= 3, c >= 1, cap >= 0 (got d = {d}, c = {c}, cap = {cap})"
        )));
    }
    let mut a = vec![0i64; d - 1];
    loop {
        let p = castelnuovo_candidate(&a, c);
        let census = p.lattice_census();
        if census.b() == d + 1 && census.c() == c {
            return Ok(p);
        }
        // Odometer step.
        let Some(i) = (0..d - 1).rev().find(|&i| a[i] < cap) else {
            return Err(SearchError::NotFound { d, c, cap });
        };
        a[i] += 1;
        a[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
}
