//! Plain-text point lists.
//!
//! ```text
//! # comment
//! d n
//! x_1 ... x_d      (n lines)
//! ```

use std::fmt::Write;

use num_bigint::BigInt;
use thiserror::Error;

use super::LatticePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_ints<T: std::str::FromStr>(
    line: usize,
    s: &str,
    expected: usize,
) -> Result<Vec<T>, ParseError> {
    let vals = s
        .split_whitespace()
        .map(|tok| {
            tok.parse::<T>()
                .map_err(|_| ParseError::new(line, format!("not an integer: {tok:?}")))
        })
        .collect::<Result<Vec<T>, _>>()?;
    if vals.len() != expected {
        return Err(ParseError::new(
            line,
            format!("expected {expected} values, found {}", vals.len()),
        ));
    }
    Ok(vals)
}

/// Reads `count` point lines of dimension `d` from a line iterator.
pub(crate) fn read_points<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    d: usize,
    count: usize,
    last_line: usize,
) -> Result<Vec<LatticePoint>, ParseError> {
    (0..count)
        .map(|i| {
            let (no, l) = lines.next().ok_or_else(|| {
                ParseError::new(last_line, format!("expected {count} points, found {i}"))
            })?;
            Ok(LatticePoint::new(parse_ints::<BigInt>(no, l, d)?))
        })
        .collect()
}

/// Parses a point-list file, returning the dimension and the points in file order.
pub fn parse_points(text: &str) -> Result<(usize, Vec<LatticePoint>), ParseError> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(last, "missing `d n` header"))?;
    let h = parse_ints::<usize>(no, header, 2)?;
    let (d, n) = (h[0], h[1]);
    let points = read_points(&mut lines, d, n, last)?;
    if let Some((no, _)) = lines.next() {
        return Err(ParseError::new(no, "unexpected trailing content"));
    }
    Ok((d, points))
}

pub fn format_points(d: usize, points: &[LatticePoint]) -> String {
    let mut out = format!("{d} {}\n", points.len());
    for p in points {
        writeln!(out, "{p}").expect("writing to a String");
    }
    out
}
