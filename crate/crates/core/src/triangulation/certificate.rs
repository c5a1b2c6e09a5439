//! Text certificate for a triangulation:
//!
//! ```text
//! d m
//! n
//! <n lines of d coordinates>     point configuration, in order
//! <m lines of d+1 indices>       zero-based simplex vertex indices
//! ```

use std::fmt::Write;
use std::sync::Arc;

use super::{PointConfig, Triangulation, TriangulationError};
use crate::polytope::text::{content_lines, parse_ints, read_points};
use crate::polytope::{LatticePoint, ParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub dim: usize,
    pub points: Vec<LatticePoint>,
    pub cells: Vec<Vec<usize>>,
}

impl Certificate {
    pub fn from_triangulation(t: &Triangulation) -> Self {
        Certificate {
            dim: t.config().dim(),
            points: t.config().points().to_vec(),
            cells: t.cells(),
        }
    }

    /// Rebuilds the triangulation; the polytope is the hull of the listed points.
    pub fn into_triangulation(self) -> Result<Triangulation, TriangulationError> {
        let config = PointConfig::from_points(self.points)?;
        Triangulation::new(Arc::new(config), self.cells)
    }
}

pub fn format_certificate(t: &Triangulation) -> String {
    let cfg = t.config();
    let mut out = format!("{} {}\n{}\n", cfg.dim(), t.len(), cfg.len());
    for p in cfg.points() {
        writeln!(out, "{p}").expect("writing to a String");
    }
    for s in t.simplices() {
        let idx: Vec<String> = s.vertices().iter().map(usize::to_string).collect();
        writeln!(out, "{}", idx.join(" ")).expect("writing to a String");
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(last, "missing `d m` header"))?;
    let h = parse_ints::<usize>(no, header, 2)?;
    let (dim, m) = (h[0], h[1]);
    let (no, count) = lines
        .next()
        .ok_or_else(|| ParseError::new(last, "missing point count"))?;
    let n = parse_ints::<usize>(no, count, 1)?[0];
    let points = read_points(&mut lines, dim, n, last)?;
    let cells = (0..m)
        .map(|i| {
            let (no, l) = lines.next().ok_or_else(|| {
                ParseError::new(last, format!("expected {m} simplices, found {i}"))
            })?;
            parse_ints::<usize>(no, l, dim + 1)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((no, _)) = lines.next() {
        return Err(ParseError::new(no, "unexpected trailing content"));
    }
    Ok(Certificate { dim, points, cells })
}
